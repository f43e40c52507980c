#include "besselstop/boundary.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "besselstop/oracles.hpp"
#include "besselstop/quadrature.hpp"

namespace besselstop {

std::string_view to_string(RootMethod method) {
    switch (method) {
        case RootMethod::bisection: return "bisection";
        case RootMethod::newton_polished: return "newton_polished";
    }
    return "unknown";
}

namespace {

constexpr double kMaxBracket = 1152921504606846976.0;  // 2^60

bool near_equal(double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

// Bisection on a function that is negative left of the root, positive right.
// Returns {lo, hi, iterations}.
struct Bracket {
    double lo;
    double hi;
    int iterations;
};

Bracket bisect(const std::function<double(double)>& f, double lo, double hi, double tol,
               int max_iter = 200) {
    int it = 0;
    while (hi - lo > tol && it < max_iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (f(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
        ++it;
    }
    return {lo, hi, it};
}

}  // namespace

RootResult find_Z(const ModelParams& params, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("find_Z: tol must be > 0");

    double lo = 0.0;
    double hi = std::max(1.0, params.root_scale_guess());
    auto table = build_coefficients(params, std::max(4.0, 4.0 * hi));
    auto F = [&](double z) { return F_eval(table, z); };

    while (!(F(hi) > 0.0)) {
        lo = hi;
        hi *= 2.0;
        if (hi > kMaxBracket) {
            std::ostringstream msg;
            msg << "find_Z: no sign change of F below 2^60 for alpha=" << params.alpha()
                << ", n=" << params.n();
            throw RootError(msg.str());
        }
        if (hi > table.ymax()) table = build_coefficients(params, 2.0 * hi);
    }

    const auto br = bisect(F, lo, hi, tol);
    RootResult result;
    result.bracket_lo = br.lo;
    result.bracket_hi = br.hi;
    result.iterations = br.iterations;
    result.value = 0.5 * (br.lo + br.hi);
    result.residual = F(result.value);
    result.method = RootMethod::bisection;

    const double slope = F_derivative(table, result.value);
    if (slope > 0.0) {
        const double polished = result.value - result.residual / slope;
        if (polished >= br.lo && polished <= br.hi) {
            const double r = F(polished);
            if (std::abs(r) <= std::abs(result.residual)) {
                result.value = polished;
                result.residual = r;
                result.method = RootMethod::newton_polished;
                ++result.iterations;
            }
        }
    }
    return result;
}

double excursion_h(double c) {
    return 2.0 * exp_half_square_integral(c) - c * std::exp(0.5 * c * c);
}

RootResult find_C_excursion(double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("find_C_excursion: tol must be > 0");
    // h > 0 on (0, C) and h < 0 beyond, so flip the sign for the shared bisection.
    auto minus_h = [](double c) { return -excursion_h(c); };
    const auto br = bisect(minus_h, 1.0, 2.0, tol);

    RootResult result;
    result.bracket_lo = br.lo;
    result.bracket_hi = br.hi;
    result.iterations = br.iterations;
    result.value = 0.5 * (br.lo + br.hi);
    result.residual = excursion_h(result.value);
    result.method = RootMethod::bisection;

    // h'(c) = exp(c^2/2) (1 - c^2)
    const double c = result.value;
    const double slope = std::exp(0.5 * c * c) * (1.0 - c * c);
    const double polished = c - result.residual / slope;
    if (polished >= br.lo && polished <= br.hi) {
        const double r = excursion_h(polished);
        if (std::abs(r) <= std::abs(result.residual)) {
            result.value = polished;
            result.residual = r;
            result.method = RootMethod::newton_polished;
            ++result.iterations;
        }
    }
    return result;
}

std::optional<double> closed_form_Z(const ModelParams& params) {
    const double alpha = params.alpha();
    const double n = params.n();
    if (near_equal(alpha, n)) return n;

    std::function<double(double)> defect;
    if (near_equal(n, alpha - 2.0)) {
        // 2yH' - nH = exp(y/2) - 2nH; negative below the root.
        defect = [&](double y) { return std::exp(0.5 * y) - 2.0 * n * quadrature_H(params, y); };
    } else if (near_equal(n, 2.0) && alpha > 2.0) {
        // 2yH0' - 2H0 = (y - alpha) H0 + 1.
        defect = [&](double y) { return (y - alpha) * quadrature_H(params, y) + 1.0; };
    } else {
        return std::nullopt;
    }

    double lo = 0.0;
    double hi = std::max(1.0, params.root_scale_guess());
    while (!(defect(hi) > 0.0)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e4) throw RootError("closed_form_Z: bracket growth failed");
    }
    const auto br = bisect(defect, lo, hi, 1e-13 * hi);
    return 0.5 * (br.lo + br.hi);
}

double proposition_margin(const ModelParams& params) {
    return find_Z(params).value - 0.5 * (params.alpha() + params.n() - 2.0);
}

}  // namespace besselstop
