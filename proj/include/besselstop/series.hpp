#pragma once

#include <cstddef>
#include <vector>

#include "besselstop/errors.hpp"

namespace besselstop {

/// Problem instance: Bessel dimension alpha and payoff exponent n (payoff x^n,
/// or q^{n/2} in squared coordinates). Both strictly positive.
class ModelParams {
public:
    ModelParams(double alpha, double n);

    double alpha() const noexcept { return alpha_; }
    double n() const noexcept { return n_; }

    /// (alpha + n) / 2, the natural scale of the boundary root.
    double root_scale_guess() const noexcept;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;

private:
    double alpha_;
    double n_;
};

enum class Precision { standard, extended };

/// Truncated coefficients A_0..A_K of
///   psi(y) = sum_k A_k y^k,  A_{k+1} = (2k+n) / (2(k+1)(2k+alpha)) A_k,  A_0 = 1,
/// the solution of 4y g'' + 2(alpha - y) g' - n g = 0 regular at the origin.
/// Valid (converged to the requested relative tolerance) on [0, ymax].
class CoefficientTable {
public:
    CoefficientTable(ModelParams params, std::vector<double> coeffs, double ymax,
                     double eps);

    const ModelParams& params() const noexcept { return params_; }
    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    double operator[](std::size_t k) const { return coeffs_[k]; }
    double ymax() const noexcept { return ymax_; }
    double eps() const noexcept { return eps_; }

private:
    ModelParams params_;
    std::vector<double> coeffs_;
    double ymax_;
    double eps_;
};

/// Thrown when the truncation cap is hit before the tail test passes.
class TruncationError : public NumericError {
public:
    TruncationError(const std::string& what, CoefficientTable partial)
        : NumericError(what), partial_(std::move(partial)) {}

    const CoefficientTable& partial() const noexcept { return partial_; }

private:
    CoefficientTable partial_;
};

inline constexpr std::size_t kMaxSeriesOrder = 500;
inline constexpr double kDefaultSeriesEps = 1e-14;

/// Builds coefficients by the recursion, choosing the smallest K for which
/// the (k^2-weighted) last term at ymax is below eps times the partial sum.
CoefficientTable build_coefficients(const ModelParams& params, double ymax,
                                    double eps = kDefaultSeriesEps);

/// Table sized for the default validity range max(4, 4 * max(1, (alpha+n)/2)).
CoefficientTable build_default_coefficients(const ModelParams& params);

/// A_k from the Gamma-ratio closed form, evaluated in log space:
///   A_k = Gamma(alpha/2) Gamma(k + n/2) / (Gamma(n/2) Gamma(k + alpha/2) 2^k k!).
double gamma_form_coefficient(const ModelParams& params, std::size_t k);

double psi_eval(const CoefficientTable& table, double y,
                Precision precision = Precision::standard);

/// First or second derivative of psi; any other order is an argument error.
double psi_derivative(const CoefficientTable& table, double y, int order);

/// F(z) = sum (2k - n) A_k z^k = 2 z psi'(z) - n psi(z).
double F_eval(const CoefficientTable& table, double z);

/// F'(z) = sum k (2k - n) A_k z^{k-1}.
double F_derivative(const CoefficientTable& table, double z);

/// 4y psi'' + 2(alpha - y) psi' - n psi at y.
double ode_residual(const CoefficientTable& table, double y);

}  // namespace besselstop
