#include <doctest.h>

#include <cmath>

#include "besselstop/boundary.hpp"

using namespace besselstop;

namespace {
// Frozen from a 50-digit mpmath root solve of the series F.
struct Ref {
    double alpha, n, Z;
};
const Ref kRefs[] = {{3, 1, 2.2601976579937238},  {1, 1, 1.0},
                     {2, 2, 2.0},                 {7, 2, 4.840097315571535},
                     {5, 1, 3.384062085402439},   {5, 3, 4.142719526139799},
                     {0.5, 0.5, 0.5},             {4, 2, 3.18724852008008},
                     {10, 0.25, 5.76549812566417}, {0.25, 10, 4.757008227586683}};
}  // namespace

TEST_SUITE("boundary") {

TEST_CASE("excursion constant") {
    const auto r = find_C_excursion(1e-8);
    CHECK(std::abs(r.value - 1.50339538) <= 1e-6);
    CHECK(excursion_h(1.0) > 0.0);
    CHECK(excursion_h(2.0) < 0.0);
    CHECK(find_C_excursion(1e-13).value == doctest::Approx(1.5033953764707818).epsilon(1e-14));
}

TEST_CASE("Z matches reference roots") {
    for (const auto& ref : kRefs) {
        CAPTURE(ref.alpha);
        CAPTURE(ref.n);
        const auto r = find_Z(ModelParams(ref.alpha, ref.n));
        CHECK(r.value == doctest::Approx(ref.Z).epsilon(1e-12));
        CHECK(r.bracket_lo <= r.value);
        CHECK(r.value <= r.bracket_hi);
    }
}

TEST_CASE("Z for alpha = n is n") {
    for (double n : {0.5, 1.0, 2.0, 3.0, 5.0, 8.0}) CHECK(std::abs(find_Z(ModelParams(n, n)).value - n) <= 1e-12);
}

TEST_CASE("Z(3,1) is C squared") {
    const double C = find_C_excursion(1e-13).value;
    CHECK(std::abs(find_Z(ModelParams(3, 1)).value - C * C) <= 1e-8);
}

TEST_CASE("closed forms") {
    CHECK(*closed_form_Z(ModelParams(2, 2)) == 2.0);
    CHECK(std::abs(*closed_form_Z(ModelParams(3, 1)) - 2.2601976579937238) <= 1e-8);
    CHECK(std::abs(*closed_form_Z(ModelParams(5, 3)) - 4.142719526139799) <= 1e-8);
    CHECK(std::abs(*closed_form_Z(ModelParams(7, 2)) - 4.840097315571535) <= 1e-8);
    CHECK_FALSE(closed_form_Z(ModelParams(5, 1)).has_value());
}

TEST_CASE("proposition margin") {
    CHECK(proposition_margin(ModelParams(3, 1)) == doctest::Approx(1.2601976579937238));
    CHECK(proposition_margin(ModelParams(1, 1)) == doctest::Approx(1.0));
    CHECK(proposition_margin(ModelParams(0.5, 0.5)) > 0.5);
}

TEST_CASE("bad tolerance") {
    CHECK_THROWS_AS(find_Z(ModelParams(3, 1), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(find_C_excursion(-1.0), std::invalid_argument);
}

}  // TEST_SUITE
