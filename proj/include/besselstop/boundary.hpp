#pragma once

#include <optional>
#include <string_view>

#include "besselstop/series.hpp"

namespace besselstop {

enum class RootMethod { bisection, newton_polished };

std::string_view to_string(RootMethod method);

struct RootResult {
    double value = 0.0;
    double residual = 0.0;
    int iterations = 0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    RootMethod method = RootMethod::bisection;
};

inline constexpr double kDefaultZTol = 1e-10;
inline constexpr double kDefaultCTol = 1e-8;

/// Unique positive root Z of F_{alpha,n}. Brackets by doubling from
/// max(1, (alpha+n)/2), bisects to width tol, then takes one Newton step
/// if it stays inside the bracket and lowers |F|.
RootResult find_Z(const ModelParams& params, double tol = kDefaultZTol);

/// h(c) = 2 int_0^c exp(t^2/2) dt - c exp(c^2/2); positive on (0, C), negative after.
double excursion_h(double c);

/// Root C of excursion_h in (1, 2): the Brownian-excursion boundary is C sqrt(1-t).
RootResult find_C_excursion(double tol = kDefaultCTol);

/// Z from an explicit solution when one exists:
///   alpha == n          -> n
///   n == alpha - 2      -> root of exp(Z/2) = 2 n H(Z)
///   n == 2, alpha > 2   -> root of (alpha - Z) H0(Z) = 1
/// with H, H0 the quadrature-defined solutions in oracles.hpp.
std::optional<double> closed_form_Z(const ModelParams& params);

/// Z_{alpha,n} - (alpha + n - 2)/2, nonnegative for every alpha, n > 0.
double proposition_margin(const ModelParams& params);

}  // namespace besselstop
