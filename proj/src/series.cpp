#include "besselstop/series.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace besselstop {

ModelParams::ModelParams(double alpha, double n) : alpha_(alpha), n_(n) {
    if (!(alpha > 0.0) || !(n > 0.0) || !std::isfinite(alpha) || !std::isfinite(n)) {
        std::ostringstream msg;
        msg << "ModelParams requires alpha > 0 and n > 0 (got alpha=" << alpha
            << ", n=" << n << ")";
        throw std::invalid_argument(msg.str());
    }
}

double ModelParams::root_scale_guess() const noexcept { return 0.5 * (alpha_ + n_); }

CoefficientTable::CoefficientTable(ModelParams params, std::vector<double> coeffs,
                                   double ymax, double eps)
    : params_(params), coeffs_(std::move(coeffs)), ymax_(ymax), eps_(eps) {
    if (coeffs_.empty()) throw std::invalid_argument("CoefficientTable: no coefficients");
}

namespace {

double coefficient_ratio(const ModelParams& p, std::size_t k) {
    const double kk = static_cast<double>(k);
    return (2.0 * kk + p.n()) / (2.0 * (kk + 1.0) * (2.0 * kk + p.alpha()));
}

void check_range(const CoefficientTable& table, double y) {
    if (!(y >= 0.0)) throw std::out_of_range("series argument must be nonnegative");
    if (y > table.ymax() * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "series argument " << y << " outside validated range [0, "
            << table.ymax() << "]";
        throw std::out_of_range(msg.str());
    }
}

}  // namespace

CoefficientTable build_coefficients(const ModelParams& params, double ymax, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("build_coefficients: eps must be > 0");
    if (!(ymax > 0.0)) throw std::invalid_argument("build_coefficients: ymax must be > 0");

    std::vector<double> coeffs{1.0};
    coeffs.reserve(64);
    double term = 1.0;  // A_k ymax^k
    double partial = 1.0;
    for (std::size_t k = 0; k < kMaxSeriesOrder; ++k) {
        const double ratio = coefficient_ratio(params, k);
        coeffs.push_back(coeffs.back() * ratio);
        term *= ratio * ymax;
        partial += term;
        const double kk = static_cast<double>(k + 1);
        const double next_ratio = coefficient_ratio(params, k + 1) * ymax;
        if (next_ratio < 0.5 && term * (1.0 + kk * kk) <= eps * partial) {
#ifndef NDEBUG
            for (std::size_t j = 0; j < coeffs.size(); ++j) {
                const double closed = gamma_form_coefficient(params, j);
                if (closed > 1e-290) assert(std::abs(coeffs[j] / closed - 1.0) <= 1e-10);
            }
#endif
            return CoefficientTable(params, std::move(coeffs), ymax, eps);
        }
    }
    std::ostringstream msg;
    msg << "series truncation did not converge within K=" << kMaxSeriesOrder
        << " terms at ymax=" << ymax;
    throw TruncationError(msg.str(), CoefficientTable(params, std::move(coeffs), ymax, eps));
}

CoefficientTable build_default_coefficients(const ModelParams& params) {
    const double z_guess = std::max(1.0, params.root_scale_guess());
    return build_coefficients(params, std::max(4.0, 4.0 * z_guess));
}

double gamma_form_coefficient(const ModelParams& params, std::size_t k) {
    const double a = 0.5 * params.alpha();
    const double h = 0.5 * params.n();
    const double kk = static_cast<double>(k);
    const double log_value = std::lgamma(a) - std::lgamma(h) + std::lgamma(kk + h) -
                             std::lgamma(kk + a) - kk * std::log(2.0) -
                             std::lgamma(kk + 1.0);
    return std::exp(log_value);
}

double psi_eval(const CoefficientTable& table, double y, Precision precision) {
    check_range(table, y);
    const auto& c = table.coeffs();
    if (precision == Precision::extended) {
        long double acc = 0.0L;
        const long double yy = y;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * yy + *it;
        return static_cast<double>(acc);
    }
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * y + *it;
    return acc;
}

double psi_derivative(const CoefficientTable& table, double y, int order) {
    if (order != 1 && order != 2)
        throw std::invalid_argument("psi_derivative: order must be 1 or 2");
    check_range(table, y);
    const auto& c = table.coeffs();
    const std::size_t K = c.size() - 1;
    double acc = 0.0;
    if (order == 1) {
        for (std::size_t k = K; k >= 1; --k) acc = acc * y + static_cast<double>(k) * c[k];
        return acc;
    }
    for (std::size_t k = K; k >= 2; --k)
        acc = acc * y + static_cast<double>(k) * static_cast<double>(k - 1) * c[k];
    return acc;
}

double F_eval(const CoefficientTable& table, double z) {
    check_range(table, z);
    const auto& c = table.coeffs();
    const double n = table.params().n();
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;)
        acc = acc * z + (2.0 * static_cast<double>(k) - n) * c[k];
    return acc;
}

double F_derivative(const CoefficientTable& table, double z) {
    check_range(table, z);
    const auto& c = table.coeffs();
    const double n = table.params().n();
    double acc = 0.0;
    for (std::size_t k = c.size() - 1; k >= 1; --k) {
        const double kk = static_cast<double>(k);
        acc = acc * z + kk * (2.0 * kk - n) * c[k];
    }
    return acc;
}

double ode_residual(const CoefficientTable& table, double y) {
    const auto& p = table.params();
    return 4.0 * y * psi_derivative(table, y, 2) +
           2.0 * (p.alpha() - y) * psi_derivative(table, y, 1) - p.n() * psi_eval(table, y);
}

}  // namespace besselstop
