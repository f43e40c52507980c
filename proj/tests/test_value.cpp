#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "besselstop/value_function.hpp"

using namespace besselstop;

namespace {
constexpr double kC = 1.5033953764707818;
constexpr double kB = 0.97119742109306791;  // 2 C exp(-C^2/2)
}  // namespace

TEST_SUITE("value") {

TEST_CASE("candidate constants") {
    const auto s11 = build_candidate(ModelParams(1, 1));
    CHECK(s11.Z == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s11.E1 == doctest::Approx(0.6065306597126334).epsilon(1e-12));
    const auto s22 = build_candidate(ModelParams(2, 2));
    CHECK(s22.E1 == doctest::Approx(0.7357588823428846).epsilon(1e-12));
    const auto s31 = build_candidate(ModelParams(3, 1));
    CHECK(s31.E1 == doctest::Approx(kB).epsilon(1e-12));
    CHECK(build_candidate(ModelParams(7, 2)).E1 == doctest::Approx(2.090827836959593).epsilon(1e-11));
    CHECK(build_candidate(ModelParams(5, 3)).E1 == doctest::Approx(2.125094158584227).epsilon(1e-11));
    CHECK(build_candidate(ModelParams(10, 0.25)).E1 == doctest::Approx(1.1322836262973956).epsilon(1e-11));
    CHECK(build_candidate(ModelParams(0.25, 10)).E1 == doctest::Approx(0.21683360863046).epsilon(1e-11));
}

TEST_CASE("U_star branches") {
    const auto s11 = build_candidate(ModelParams(1, 1));
    CHECK(U_star(s11, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(U_star(s11, 0.75, 0.5) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    // Brownian bridge closed form sqrt(1-t) exp((q - (1-t)) / (2(1-t))).
    const double t = 0.3, q = 0.2;
    CHECK(U_star(s11, t, q) ==
          doctest::Approx(std::sqrt(1 - t) * std::exp((q - (1 - t)) / (2 * (1 - t)))).epsilon(1e-13));
    const auto s31 = build_candidate(ModelParams(3, 1));
    CHECK(U_star(s31, 0.0, 0.0) == doctest::Approx(kB).epsilon(1e-12));
    CHECK_THROWS_AS(U_star(s31, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(U_star(s31, 0.2, -1.0), std::invalid_argument);
}

TEST_CASE("V_star and boundaries") {
    const auto s31 = build_candidate(ModelParams(3, 1));
    CHECK(V_star(s31, 0.0, 0.0) == doctest::Approx(kB).epsilon(1e-12));
    CHECK(V_star(s31, 0.0, 2.0) == doctest::Approx(2.0));
    CHECK(boundary_x(s31, 0.0) == doctest::Approx(kC).epsilon(1e-12));
    CHECK(boundary_x(s31, 1.0) == 0.0);
    CHECK(boundary_q(s31, 1.0) == 0.0);
    for (double t : {0.0, 0.4, 0.9}) {
        const double x = boundary_x(s31, t);
        CHECK(V_star(s31, t, x * (1 - 1e-12)) == doctest::Approx(x).epsilon(1e-10));
    }
    const auto s11 = build_candidate(ModelParams(1, 1));
    CHECK(boundary_q(s11, 0.5) == doctest::Approx(0.5));
    CHECK_THROWS_AS(boundary_q(s11, 1.5), std::invalid_argument);
}

TEST_CASE("excursion quadrature value agrees with series") {
    const auto s31 = build_candidate(ModelParams(3, 1));
    CHECK(excursion_value(0.0, 0.0) == doctest::Approx(kB).epsilon(1e-10));
    CHECK(excursion_value(0.0, kC) == doctest::Approx(kC).epsilon(1e-10));
    CHECK(excursion_value(0.96, 1.0) == 1.0);
    for (double t : {0.0, 0.3, 0.8})
        for (double x : {1e-9, 0.1, 0.7, 1.1})
            CHECK(std::abs(excursion_value(t, x) - V_star(s31, t, x)) <= 1e-8);
}

TEST_CASE("smooth fit") {
    CHECK(smooth_fit_residual(build_candidate(ModelParams(1, 1)), 0.0) <= 1e-12);
    CHECK(smooth_fit_residual(build_candidate(ModelParams(3, 1)), 0.5) <= 1e-9);
    const auto s22 = build_candidate(ModelParams(2, 2));
    for (double t : {0.0, 0.25, 0.5, 0.99}) CHECK(smooth_fit_residual(s22, t) <= 1e-12);
}

TEST_CASE("PDE residual vanishes in continuation region") {
    for (auto [a, n] : {std::pair{3.0, 1.0}, {0.5, 2.0}, {7.0, 2.0}}) {
        const auto s = build_candidate(ModelParams(a, n));
        for (double t : {0.0, 0.5, 0.9})
            for (double f : {0.0, 0.3, 0.9}) CHECK(std::abs(pde_residual(s, t, f * boundary_q(s, t))) <= 1e-8);
    }
}

TEST_CASE("explicit special values") {
    CHECK(*explicit_special_values(ModelParams(1, 1), 0.0, 0.0) ==
          doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    CHECK(*explicit_special_values(ModelParams(3, 1), 0.0, 0.0) == doctest::Approx(kB).epsilon(1e-8));
    const auto s53 = build_candidate(ModelParams(5, 3));
    CHECK(std::abs(*explicit_special_values(ModelParams(5, 3), 0.0, 0.0) - U_star(s53, 0.0, 0.0)) <= 1e-7);
    const auto s72 = build_candidate(ModelParams(7, 2));
    CHECK(std::abs(*explicit_special_values(ModelParams(7, 2), 0.2, 1.0) - U_star(s72, 0.2, 1.0)) <= 1e-7);
    CHECK_FALSE(explicit_special_values(ModelParams(5, 1), 0.0, 0.0).has_value());
}

TEST_CASE("excursion profile") {
    const auto p = make_excursion_profile(excursion_solution());
    CHECK(p.f(0.0) == doctest::Approx(kB).epsilon(1e-12));
    CHECK(p.f_prime(0.0) == 0.0);
    CHECK(p.f(kC) == doctest::Approx(kC).epsilon(1e-10));
    CHECK(p.f_prime(kC) == doctest::Approx(1.0).epsilon(1e-9));
}

}  // TEST_SUITE
