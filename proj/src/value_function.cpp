#include "besselstop/value_function.hpp"

#include <cmath>
#include <stdexcept>

#include "besselstop/oracles.hpp"
#include "besselstop/quadrature.hpp"

namespace besselstop {

namespace {

void check_time(double t) {
    if (!(t >= 0.0) || !(t < 1.0))
        throw std::invalid_argument("value function requires 0 <= t < 1");
}

void check_state(double v) {
    if (!(v >= 0.0)) throw std::invalid_argument("value function requires a nonnegative state");
}

double payoff(double q, double n) { return q > 0.0 ? std::pow(q, 0.5 * n) : 0.0; }

}  // namespace

CandidateSolution build_candidate(const ModelParams& params, double tol) {
    const double Z = find_Z(params, tol).value;
    auto table = build_coefficients(params, std::max(2.0 * Z, 1.0));
    const double E1 = std::pow(Z, 0.5 * params.n()) / psi_eval(table, Z);
    return CandidateSolution{params, Z, E1, std::move(table)};
}

ExcursionSolution make_excursion_solution(double tol) {
    const double C = find_C_excursion(tol).value;
    return {C, C * C / exp_half_square_integral(C)};
}

const ExcursionSolution& excursion_solution() {
    static const ExcursionSolution ex = make_excursion_solution();
    return ex;
}

double U_star(const CandidateSolution& sol, double t, double q) {
    check_time(t);
    check_state(q);
    const double s = 1.0 - t;
    if (q >= sol.Z * s) return payoff(q, sol.params.n());
    return sol.E1 * std::pow(s, 0.5 * sol.params.n()) * psi_eval(sol.table, q / s);
}

double V_star(const CandidateSolution& sol, double t, double x) {
    check_state(x);
    return U_star(sol, t, x * x);
}

double boundary_q(const CandidateSolution& sol, double t) {
    if (!(t >= 0.0) || !(t <= 1.0)) throw std::invalid_argument("boundary requires t in [0, 1]");
    return sol.Z * (1.0 - t);
}

double boundary_x(const CandidateSolution& sol, double t) {
    return std::sqrt(boundary_q(sol, t));
}

double excursion_value(const ExcursionSolution& ex, double t, double x) {
    check_time(t);
    check_state(x);
    const double root = std::sqrt(1.0 - t);
    if (x >= ex.C * root) return x;
    const double y = x / root;
    if (y < 1e-8) return ex.B * root * (1.0 + y * y / 6.0);
    return ex.B * (1.0 - t) / x * exp_half_square_integral(y);
}

double excursion_value(double t, double x) { return excursion_value(excursion_solution(), t, x); }

double ExcursionProfile::f(double y) const { return ex.B * psi_eval(table, y * y); }

double ExcursionProfile::f_prime(double y) const {
    return 2.0 * y * ex.B * psi_derivative(table, y * y, 1);
}

double ExcursionProfile::f_second(double y) const {
    const double u = y * y;
    return ex.B * (2.0 * psi_derivative(table, u, 1) + 4.0 * u * psi_derivative(table, u, 2));
}

ExcursionProfile make_excursion_profile(const ExcursionSolution& ex) {
    return {ex, build_coefficients(ModelParams(3.0, 1.0), ex.C * ex.C)};
}

double smooth_fit_residual(const CandidateSolution& sol, double t) {
    if (!(t >= 0.0) || !(t < 1.0)) throw std::invalid_argument("smooth fit requires 0 <= t < 1");
    const double n = sol.params.n();
    const double s = 1.0 - t;
    const double slope_inside = sol.E1 * psi_derivative(sol.table, sol.Z, 1) * std::pow(s, 0.5 * n - 1.0);
    const double slope_payoff = 0.5 * n * std::pow(sol.Z * s, 0.5 * n - 1.0);
    return std::abs(slope_inside - slope_payoff);
}

double pde_residual(const CandidateSolution& sol, double t, double q) {
    check_time(t);
    check_state(q);
    const double n = sol.params.n();
    const double s = 1.0 - t;
    const double y = q / s;
    const double g = sol.E1 * psi_eval(sol.table, y);
    const double gp = sol.E1 * psi_derivative(sol.table, y, 1);
    const double gpp = sol.E1 * psi_derivative(sol.table, y, 2);
    const double U_t = -0.5 * n * std::pow(s, 0.5 * n - 1.0) * g + std::pow(s, 0.5 * n - 2.0) * q * gp;
    const double U_q = std::pow(s, 0.5 * n - 1.0) * gp;
    const double U_qq = std::pow(s, 0.5 * n - 2.0) * gpp;
    return U_t + (sol.params.alpha() - 2.0 * q / s) * U_q + 2.0 * q * U_qq;
}

std::optional<double> explicit_special_values(const ModelParams& params, double t, double q) {
    check_time(t);
    check_state(q);
    const double n = params.n();
    const double alpha = params.alpha();
    const double s = 1.0 - t;

    if (std::abs(alpha - n) <= 1e-12 * std::max(1.0, alpha)) {
        const double Z = n;
        if (q >= Z * s) return payoff(q, n);
        const double E1 = std::pow(n, 0.5 * n) * std::exp(-0.5 * n);
        return std::pow(s, 0.5 * n) * E1 * std::exp(q / (2.0 * s));
    }

    const auto Z = closed_form_Z(params);
    if (!Z) return std::nullopt;
    if (q >= *Z * s) return payoff(q, n);
    const double E = std::pow(*Z, 0.5 * n) / quadrature_H(params, *Z);
    return std::pow(s, 0.5 * n) * E * quadrature_H(params, q / s);
}

}  // namespace besselstop
