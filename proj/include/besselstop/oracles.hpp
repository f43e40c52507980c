#pragma once

#include <cstddef>
#include <vector>

#include "besselstop/series.hpp"

namespace besselstop {

// ---------------------------------------------------------------------------
// ODE shooting oracle

/// Numerical solution of 4y g'' + 2(alpha - y) g' - n g = 0, g(0) = 1,
/// g'(0) = n / (2 alpha), on a grid starting at 0.
struct OdeSolution {
    ModelParams params;
    std::vector<double> grid;
    std::vector<double> g_values;
    std::vector<double> g_prime_values;
    double step = 0.0;
    /// Largest RK4 step-doubling error estimate, relative to 1 + |g|.
    double max_local_error = 0.0;
};

inline constexpr double kOdeResidualTol = 1e-8;
inline constexpr double kDefaultOdeStep = 1e-3;

/// RK4 from y = 2*step, seeded by a short Frobenius expansion on [0, 2*step]
/// (the 4y g'' coefficient vanishes at the origin). Throws AccuracyError if
/// any step's local error estimate exceeds kOdeResidualTol.
OdeSolution ode_shoot(const ModelParams& params, double ymax, double step = kDefaultOdeStep);

/// Zero of 2y g'(y) - n g(y) along the shooting solution, located by sign
/// change and bisection on the cubic Hermite interpolant. The initial range
/// is 4 * max(1, (alpha+n)/2); widened once if no sign change is found.
double Z_from_ode(const ModelParams& params, double step = kDefaultOdeStep);

// ---------------------------------------------------------------------------
// Lattice (dynamic programming) oracle

struct LatticeResult {
    std::vector<double> t_grid;
    std::vector<double> q_grid;
    /// Row-major, t_grid.size() x q_grid.size().
    std::vector<double> value;
    /// Smallest grid q where stopping is optimal, per time node (q_max if none).
    std::vector<double> boundary_estimate;
    /// Whether the continuation set is [0, boundary) at each time node.
    std::vector<bool> continuation_is_interval;
    double value_at_origin = 0.0;

    double at(std::size_t ti, std::size_t qi) const {
        return value[ti * q_grid.size() + qi];
    }
};

struct LatticeConfig {
    std::size_t t_steps = 4000;
    double q_max = 0.0;  // 0 -> 6 * Z_{alpha,n}
    std::size_t q_steps = 800;
    double t0 = 0.0;
    double eps_end = 1e-4;
};

/// Backward induction for sup_tau E[Q_tau^{n/2}] on a uniform (t, q) grid.
/// One-step law: trinomial matched to the exact conditional mean and
/// variance of the squared Bessel bridge over the step, with a stride wide
/// enough to keep weights nonnegative; mass below q = 0 is reflected.
LatticeResult dp_value(const ModelParams& params, const LatticeConfig& config = {});

// ---------------------------------------------------------------------------
// Explicit solutions built from quadrature

enum class HKind {
    shifted_power,  // n = alpha - 2: H(y) = y^{-n/2} int_0^y e^{s/2} s^{n/2-1} ds/2
    second_solution // n = 2, alpha > 2: H(y) = y^{1-alpha/2} e^{y/2} int_0^y e^{-v/2} v^{alpha/2-2} dv/2
};

/// Which explicit form applies; throws std::invalid_argument if neither.
HKind h_kind(const ModelParams& params);

/// H(y) for the special parameter families above (E = 1). y = 0 returns the
/// limit value (1/n, resp. 1/(alpha - 2)).
double quadrature_H(const ModelParams& params, double y);

/// H'(y) from the closed-form derivative identities.
double quadrature_H_derivative(const ModelParams& params, double y);

/// Constant c with psi = c H (c = n, resp. alpha - 2).
double quadrature_H_normalization(const ModelParams& params);

}  // namespace besselstop
