#include "besselstop/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <sstream>

#include "besselstop/errors.hpp"

namespace besselstop {

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
    if (a == b) return 0.0;
    // Integrate on [-1, 1]: the library's error estimate is in reference-interval units.
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    auto mapped = [&](double x) { return half * f(mid + half * x); };
    double error = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        mapped, -1.0, 1.0, 20, rel_tol, &error);
    const double scale = std::max(std::abs(value), 1e-300);
    if (!std::isfinite(value) || error > 10.0 * rel_tol * scale + 1e-300) {
        std::ostringstream msg;
        msg << "quadrature on [" << a << ", " << b << "] failed: estimate " << value
            << ", error " << error;
        throw NumericError(msg.str());
    }
    return value;
}

double integrate_endpoint(const std::function<double(double)>& f, double a, double b,
                          double rel_tol) {
    if (a == b) return 0.0;
    thread_local boost::math::quadrature::tanh_sinh<double> rule;
    const double width = b - a;
    auto mapped = [&](double u) { return width * f(a + width * u); };
    double error = 0.0;
    double L1 = 0.0;
    const double value = rule.integrate(mapped, 0.0, 1.0, rel_tol, &error, &L1);
    if (!std::isfinite(value) || error > 10.0 * rel_tol * std::max(std::abs(value), 1e-300)) {
        std::ostringstream msg;
        msg << "tanh-sinh quadrature on [" << a << ", " << b << "] failed: estimate " << value
            << ", error " << error;
        throw NumericError(msg.str());
    }
    return value;
}

double exp_half_square_integral(double c, double rel_tol) {
    return integrate([](double t) { return std::exp(0.5 * t * t); }, 0.0, c, rel_tol);
}

}  // namespace besselstop
