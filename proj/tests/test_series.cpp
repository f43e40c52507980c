#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "besselstop/quadrature.hpp"
#include "besselstop/series.hpp"

using namespace besselstop;

namespace {
// Frozen from a 50-digit mpmath evaluation.
constexpr double kC = 1.5033953764707818;
constexpr double kPsi31AtC2 = 1.5479812279348242;
}  // namespace

TEST_SUITE("series") {

TEST_CASE("model params reject nonpositive inputs") {
    CHECK_THROWS_AS(ModelParams(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(std::nan(""), 1.0), std::invalid_argument);
    CHECK(ModelParams(3.0, 1.0).root_scale_guess() == doctest::Approx(2.0));
}

TEST_CASE("first coefficients") {
    const auto t = build_coefficients(ModelParams(3.0, 1.0), 4.0);
    CHECK(t[0] == 1.0);
    CHECK(t[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(t[2] == doctest::Approx(1.0 / 40.0).epsilon(1e-15));
    for (std::size_t k = 0; k <= 10 && k <= t.order(); ++k)
        CHECK(t[k] == doctest::Approx(gamma_form_coefficient(t.params(), k)).epsilon(1e-12));
}

TEST_CASE("alpha = n gives exponential coefficients") {
    for (double n : {0.5, 1.0, 2.0, 7.0}) {
        const auto t = build_coefficients(ModelParams(n, n), 8.0);
        double expect = 1.0;
        for (std::size_t k = 0; k <= 10; ++k) {
            CHECK(t[k] == doctest::Approx(expect).epsilon(1e-13));
            expect /= 2.0 * static_cast<double>(k + 1);
        }
    }
}

TEST_CASE("truncation cap raises with partial table") {
    try {
        build_coefficients(ModelParams(1.0, 1.0), 1e4);
        FAIL("expected TruncationError");
    } catch (const TruncationError& e) {
        CHECK(e.partial().order() == kMaxSeriesOrder);
    }
}

TEST_CASE("psi values") {
    const auto exp11 = build_coefficients(ModelParams(1.0, 1.0), 4.0);
    CHECK(psi_eval(exp11, 0.0) == 1.0);
    CHECK(psi_eval(exp11, 2.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
    CHECK(psi_eval(exp11, 2.0, Precision::extended) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));

    const auto t31 = build_coefficients(ModelParams(3.0, 1.0), 4.0);
    const double y = kC * kC;
    CHECK(psi_eval(t31, y) == doctest::Approx(kPsi31AtC2).epsilon(1e-14));
    const double quad = exp_half_square_integral(kC) / kC;
    CHECK(psi_eval(t31, y) == doctest::Approx(quad).epsilon(1e-12));
}

TEST_CASE("psi derivatives and ODE residual") {
    const auto t31 = build_coefficients(ModelParams(3.0, 1.0), 4.0);
    CHECK(psi_derivative(t31, 0.0, 1) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(psi_derivative(t31, 0.0, 2) == doctest::Approx(2.0 / 40.0).epsilon(1e-15));
    CHECK_THROWS_AS(psi_derivative(t31, 1.0, 3), std::invalid_argument);
    CHECK(std::abs(ode_residual(t31, 1.0)) <= 1e-10);

    const auto t22 = build_coefficients(ModelParams(2.0, 2.0), 4.0);
    CHECK(psi_derivative(t22, 0.0, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(psi_derivative(t22, 3.0, 2) == doctest::Approx(0.25 * std::exp(1.5)).epsilon(1e-13));
}

TEST_CASE("range checks") {
    const auto t = build_coefficients(ModelParams(3.0, 1.0), 4.0);
    CHECK_THROWS_AS(psi_eval(t, -1e-3), std::out_of_range);
    CHECK_THROWS_AS(psi_eval(t, 4.5), std::out_of_range);
    CHECK_NOTHROW(psi_eval(t, 4.0));
}

TEST_CASE("F values") {
    for (double n : {0.25, 1.0, 3.0}) {
        const auto t = build_coefficients(ModelParams(2.0, n), 4.0);
        CHECK(F_eval(t, 0.0) == doctest::Approx(-n));
    }
    const auto t11 = build_coefficients(ModelParams(1.0, 1.0), 4.0);
    CHECK(std::abs(F_eval(t11, 1.0)) <= 1e-15);
    CHECK(F_eval(t11, 3.0) == doctest::Approx(2.0 * std::exp(1.5)).epsilon(1e-13));
    // F = 2 z psi' - n psi, and F' matches a central difference.
    const auto t31 = build_coefficients(ModelParams(3.0, 1.0), 4.0);
    CHECK(std::abs(F_eval(t31, kC * kC)) <= 1e-14);
    const double z = 1.7;
    CHECK(F_eval(t31, z) ==
          doctest::Approx(2.0 * z * psi_derivative(t31, z, 1) - psi_eval(t31, z)).epsilon(1e-14));
    const double h = 1e-5;
    CHECK(F_derivative(t31, z) ==
          doctest::Approx((F_eval(t31, z + h) - F_eval(t31, z - h)) / (2 * h)).epsilon(1e-8));
}

}  // TEST_SUITE
