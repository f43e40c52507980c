#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "besselstop/verification.hpp"

using namespace besselstop;

TEST_SUITE("verification") {

TEST_CASE("lambda basics") {
    LambdaParams zero;
    zero.D = 0;
    zero.B = 0;
    CHECK(lambda_eval(zero) == 0.0L);
    LambdaParams p;
    p.n = 1;
    p.gamma = -0.5;
    CHECK(lambda_eval(p) < 0.0L);
    const ModelParams m21(2, 1);
    CHECK(std::abs(static_cast<double>(H_lambda(m21)) - H_from_series(m21)) <=
          1e-9 * std::abs(H_from_series(m21)));
    LambdaParams bad;
    bad.n = 1;
    bad.gamma = -1.5;
    CHECK_THROWS_AS(lambda_eval(bad), std::invalid_argument);
}

TEST_CASE("lambda invariance") {
    LambdaParams p;
    p.n = 1;
    p.gamma = -0.5;
    CHECK(lambda_iterate_invariance(p, 10).all_passed());
    CHECK(lambda_iterate_invariance(p, 0).total() == 1);
    p.n = 2;
    p.gamma = 1.5;
    CHECK(lambda_iterate_invariance(p, 15).all_passed());
}

TEST_CASE("iterations against printed values") {
    const double n = 1.3, g = 0.7;
    const auto s = iterate_DB(Parameterization::gamma_form, n, g, 2);
    CHECK(static_cast<double>(s[1].D) == doctest::Approx(g));
    CHECK(static_cast<double>(s[1].B) == doctest::Approx(-(2 + g)));
    CHECK(static_cast<double>(s[2].D) == doctest::Approx(g * g - 2 * n));
    CHECK(static_cast<double>(s[2].B) == doctest::Approx(-(g * g + 8 * g + 2 * n + 8)));
    const double d = 2.5;
    const auto t = iterate_DB(Parameterization::delta_form, 0.0, d, 1);
    CHECK(static_cast<double>(t[1].D) == doctest::Approx(-(d + 2)));
    CHECK(static_cast<double>(t[1].B) == doctest::Approx(d));
}

TEST_CASE("tabulated polynomials") {
    const auto [D2, B2] = table1_polynomials(3.0, 2);
    CHECK(D2 == 9.0);
    CHECK(B2 == -9.0);
    const auto [D3, B3] = table1_polynomials(2.0, 3);
    CHECK(D3 == -8.0 - 8.0);
    CHECK(B3 == 8.0 - 16.0);
    const auto exact = iterate_delta_polynomials(7);
    CHECK(table1_row(7).first == exact[7].first);
    CHECK(table1_row(7).second == exact[7].second);
    const auto it = iterate_DB(Parameterization::delta_form, 0.0, 1.0, 7);
    CHECK(static_cast<double>(it[7].D) == table1_polynomials(1.0, 7).first);
    CHECK(static_cast<double>(it[7].B) == table1_polynomials(1.0, 7).second);
    CHECK(check_table1().all_passed());
    CHECK_THROWS_AS(table1_row(8), std::invalid_argument);
}

TEST_CASE("induction statements") {
    CHECK(check_P(1, 2, 40).all_passed());
    CHECK(check_P(0.5, 5, 60).all_passed());
    CHECK(check_Q(1, 7).all_passed());
    CHECK(check_Q(3, 60).all_passed());
    CHECK(check_Q(0.1, 60).all_passed());
    CHECK(check_R(2, 1, 30).all_passed());
    CHECK(check_R(0.5, 4, 50).all_passed());
    // The alternative even-r bound fails for large delta.
    CHECK_FALSE(check_Q_printed_even(50, 60).all_passed());
}

TEST_CASE("lemma checks") {
    const auto ex = lemma_checks_excursion(2000);
    CHECK(ex.all_passed());
    CHECK(lemma_checks(ModelParams(3, 1), 2000).all_passed());
    CHECK(lemma_checks(ModelParams(0.25, 10), 2000).all_passed());
    CHECK(check_F_sign_property(ModelParams(10, 0.25)).all_passed());
}

TEST_CASE("full suites") {
    const auto lemmas = lemma_suite();
    const auto* f = lemmas.first_failure();
    CHECK_MESSAGE(f == nullptr, (f ? f->name : std::string()));
    CHECK(appendix_suite().all_passed());
}

}  // TEST_SUITE
