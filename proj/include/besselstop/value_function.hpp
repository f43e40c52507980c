#pragma once

#include <optional>

#include "besselstop/boundary.hpp"
#include "besselstop/series.hpp"

namespace besselstop {

/// Everything needed to evaluate the candidate value function
///   U*(t, q) = E1 (1-t)^{n/2} psi(q / (1-t))   for q < Z (1-t),
///            = q^{n/2}                           otherwise,
/// with E1 = Z^{n/2} / psi(Z) fixed by value matching.
struct CandidateSolution {
    ModelParams params;
    double Z;
    double E1;
    CoefficientTable table;
};

/// Brownian excursion (alpha = 3, n = 1) in x-coordinates: boundary C sqrt(1-t),
/// f(y) = (B/y) int_0^y e^{s^2/2} ds with B = C^2 / int_0^C e^{s^2/2} ds.
struct ExcursionSolution {
    double C;
    double B;
};

CandidateSolution build_candidate(const ModelParams& params, double tol = kDefaultZTol);

ExcursionSolution make_excursion_solution(double tol = 1e-12);

/// Lazily built process-wide excursion solution (tol 1e-12).
const ExcursionSolution& excursion_solution();

double U_star(const CandidateSolution& sol, double t, double q);
double V_star(const CandidateSolution& sol, double t, double x);

/// z(t) = Z (1-t) and its x-coordinate image sqrt(z(t)).
double boundary_q(const CandidateSolution& sol, double t);
double boundary_x(const CandidateSolution& sol, double t);

/// Closed-form excursion value by direct quadrature; x on the stopping branch.
double excursion_value(const ExcursionSolution& ex, double t, double x);
double excursion_value(double t, double x);

/// f and its first two derivatives for the excursion, via f(y) = B psi_{3,1}(y^2).
struct ExcursionProfile {
    ExcursionSolution ex;
    CoefficientTable table;  // alpha = 3, n = 1, valid on [0, C^2]
    double f(double y) const;
    double f_prime(double y) const;
    double f_second(double y) const;
};

ExcursionProfile make_excursion_profile(const ExcursionSolution& ex);

/// |dU*/dq(t, z(t)-) - (n/2) z(t)^{n/2-1}|, from the series derivative.
double smooth_fit_residual(const CandidateSolution& sol, double t);

/// U_t + (alpha - 2q/(1-t)) U_q + 2q U_qq for U* on the continuation branch,
/// with each partial assembled from the series.
double pde_residual(const CandidateSolution& sol, double t, double q);

/// Value from an explicit solution (alpha = n exponential; n = alpha - 2 and
/// n = 2 quadrature forms), using that solution's own Z. Empty otherwise.
std::optional<double> explicit_special_values(const ModelParams& params, double t, double q);

}  // namespace besselstop
