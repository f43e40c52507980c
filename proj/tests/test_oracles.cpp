#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "besselstop/boundary.hpp"
#include "besselstop/oracles.hpp"
#include "besselstop/quadrature.hpp"
#include "besselstop/value_function.hpp"

using namespace besselstop;

namespace {
constexpr double kC = 1.5033953764707818;
constexpr double kPsi31AtC2 = 1.5479812279348242;
}  // namespace

TEST_SUITE("oracles") {

TEST_CASE("shooting reproduces exponential") {
    const auto sol = ode_shoot(ModelParams(1, 1), 4.0);
    CHECK(sol.max_local_error <= kOdeResidualTol);
    double worst = 0.0;
    for (std::size_t i = 0; i < sol.grid.size(); ++i)
        worst = std::max(worst, std::abs(sol.g_values[i] - std::exp(0.5 * sol.grid[i])));
    CHECK(worst <= 1e-8);
    CHECK(sol.grid.back() == doctest::Approx(4.0));
}

TEST_CASE("shooting matches series for the excursion") {
    const double y = kC * kC;
    const auto sol = ode_shoot(ModelParams(3, 1), y);
    CHECK(sol.g_values.back() / sol.g_values.front() == doctest::Approx(kPsi31AtC2).epsilon(1e-7));
}

TEST_CASE("Z from ODE") {
    CHECK(std::abs(Z_from_ode(ModelParams(1, 1)) - 1.0) <= 1e-6);
    CHECK(std::abs(Z_from_ode(ModelParams(3, 1)) - kC * kC) <= 1e-6);
    CHECK(std::abs(Z_from_ode(ModelParams(7, 2)) - find_Z(ModelParams(7, 2)).value) <= 1e-6);
    CHECK_THROWS_AS(ode_shoot(ModelParams(1, 1), 4.0, 0.0), std::invalid_argument);
}

TEST_CASE("lattice value for the excursion") {
    const auto lat = dp_value(ModelParams(3, 1));
    CHECK(std::abs(lat.value_at_origin - 2 * kC * std::exp(-0.5 * kC * kC)) <= 0.02 * 0.9712);
    // Obstacle constraint at every node.
    bool above = true;
    for (std::size_t ti = 0; ti < lat.t_grid.size(); ++ti)
        for (std::size_t qi = 0; qi < lat.q_grid.size(); ++qi)
            above = above && lat.at(ti, qi) >= std::sqrt(lat.q_grid[qi]) - 1e-14;
    CHECK(above);
}

TEST_CASE("lattice boundary for the Brownian bridge") {
    const auto lat = dp_value(ModelParams(1, 1));
    for (std::size_t ti = 0; ti < lat.t_grid.size(); ti += 100) {
        const double t = lat.t_grid[ti];
        if (t > 0.8) break;
        CAPTURE(t);
        CHECK(lat.boundary_estimate[ti] / (1 - t) == doctest::Approx(1.0).epsilon(0.05));
        CHECK(lat.continuation_is_interval[ti]);
    }
    CHECK(std::abs(lat.value_at_origin - std::exp(-0.5)) <= 0.02 * std::exp(-0.5));
}

TEST_CASE("lattice config validation") {
    LatticeConfig cfg;
    cfg.t_steps = 10;
    CHECK_THROWS_AS(dp_value(ModelParams(1, 1), cfg), std::invalid_argument);
}

TEST_CASE("quadrature H") {
    const ModelParams p31(3, 1);
    CHECK(h_kind(p31) == HKind::shifted_power);
    CHECK(h_kind(ModelParams(4, 2)) == HKind::shifted_power);
    CHECK(h_kind(ModelParams(5, 2)) == HKind::second_solution);
    CHECK_THROWS_AS(h_kind(ModelParams(5, 1)), std::invalid_argument);
    CHECK(quadrature_H(p31, 0.0) == doctest::Approx(1.0));
    for (double y : {0.1, 1.0, 2.26, 4.0}) {
        const double direct = exp_half_square_integral(std::sqrt(y)) / std::sqrt(y);
        CHECK(quadrature_H_normalization(p31) * quadrature_H(p31, y) == doctest::Approx(direct).epsilon(1e-9));
    }
    const ModelParams p42(4, 2);
    CHECK(quadrature_H(p42, 0.0) == doctest::Approx(0.5));
    const ModelParams p52(5, 2);
    CHECK(quadrature_H(p52, 0.0) == doctest::Approx(1.0 / 3.0));
    CHECK(quadrature_H(p52, 1e-8) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
    CHECK(std::isfinite(quadrature_H(p42, 1e-12)));
    CHECK(quadrature_H(p42, 1e-8) == doctest::Approx(0.5).epsilon(1e-6));
    for (const auto& p : {p42, p52, ModelParams(2.5, 0.5), ModelParams(3, 2)}) {
        const auto t = build_coefficients(p, 8.0);
        for (double y : {0.5, 3.0, 6.0}) {
            CHECK(quadrature_H_normalization(p) * quadrature_H(p, y) == doctest::Approx(psi_eval(t, y)).epsilon(1e-9));
            const double h = 1e-5;
            CHECK(quadrature_H_derivative(p, y) ==
                  doctest::Approx((quadrature_H(p, y + h) - quadrature_H(p, y - h)) / (2 * h)).epsilon(1e-6));
        }
    }
}

}  // TEST_SUITE
