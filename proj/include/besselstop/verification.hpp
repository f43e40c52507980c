#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "besselstop/report.hpp"
#include "besselstop/series.hpp"

namespace besselstop {

// ---------------------------------------------------------------------------
// The weighted series family used to prove Z >= (alpha + n - 2)/2.
//
//   Lambda_{D,B,Delta} = sum_k (n+gamma)^k / (2^k k!)
//                        * Gamma(k + n/2) / Gamma(k + n/2 + Delta + 1 + gamma)
//                        * [ D k / 2^{Delta-1} + B n / 2^Delta ]
//
// with alpha = n + 2 + 2 gamma. Lambda_{1,-1,0} is the scaled F_{alpha,n}(n+gamma).

struct LambdaParams {
    long double D = 1.0L;
    long double B = -1.0L;
    double Delta = 0.0;
    double n = 1.0;
    double gamma = 0.0;
    /// Series truncation; 0 selects it automatically from the term decay.
    std::size_t K = 0;
};

/// gamma such that alpha = n + 2 + 2 gamma.
double gamma_of(const ModelParams& params);

/// Throws std::invalid_argument unless n + gamma > 0 and n/2 + 1 + gamma > 0.
long double lambda_eval(const LambdaParams& p);

/// One application of Lambda_{D,B,Delta} = Lambda_{D~,B~,Delta+1}.
LambdaParams lambda_shift(const LambdaParams& p);

/// Applies lambda_shift `steps` times; each stage must equal stage 0 to 1e-8 relative.
VerificationReport lambda_iterate_invariance(const LambdaParams& p, std::size_t steps);

/// H = Gamma(n/2)/Gamma(n/2+1+gamma) F_{alpha,n}(n+gamma), evaluated as Lambda_{1,-1,0}.
long double H_lambda(const ModelParams& params);
/// Same quantity from the power series F.
double H_from_series(const ModelParams& params);

enum class Parameterization { gamma_form, delta_form };

struct IterState {
    std::size_t r = 0;
    long double D = 1.0L;
    long double B = -1.0L;
    Parameterization parameterization = Parameterization::gamma_form;
    /// (n, gamma) for gamma_form, (alpha, delta) for delta_form.
    double first = 0.0;
    double second = 0.0;
};

/// gamma_form: D' = (n+g)D + nB,        B' = (n+g)D + (n+2r+2+2g)B
/// delta_form: D' = (a+d)D + (a+2+2d)B, B' = (a+d)D + (2r+a)B
/// starting from D_0 = 1, B_0 = -1. Extended precision holds r_max = 60
/// well inside range for the parameter regimes checked here.
std::vector<IterState> iterate_DB(Parameterization form, double first, double second,
                                  std::size_t r_max);

/// Polynomial in delta with integer coefficients, coeffs[i] multiplies delta^i.
struct DeltaPolynomial {
    std::vector<long long> coeffs;

    double operator()(double delta) const;
    DeltaPolynomial& trim();
    friend bool operator==(const DeltaPolynomial& a, const DeltaPolynomial& b);
};

/// (D_{0,j}, B_{0,j}) exactly, j = 0..j_max, from the alpha = 0 delta-form iteration.
std::vector<std::pair<DeltaPolynomial, DeltaPolynomial>> iterate_delta_polynomials(int j_max);

/// Reference closed forms for (D_{0,j}, B_{0,j}), 2 <= j <= 7.
std::pair<DeltaPolynomial, DeltaPolynomial> table1_row(int j);

/// Evaluates table1_row(j) at delta.
std::pair<double, double> table1_polynomials(double delta, int j);

VerificationReport check_table1();

/// D_r <= gamma^r and B_r <= -gamma^r (1 + 2r/gamma) for r <= r_max, and
/// D_{r0+1} < 0 for the first r0 > gamma^2/(2n).
VerificationReport check_P(double n, double gamma, std::size_t r_max);

/// For 7 <= r <= r_max, alpha = 0:
///   odd r:  D <= -d^r - 2r d^{r-1},  B <= d^r - 2r d^{r-1}
///   even r: D <=  d^r - 4r d^{r-1},  B <= -d^r
/// and both negative at the first odd r* >= 7 with 2r* > d.
VerificationReport check_Q(double delta, std::size_t r_max);

/// The alternative even-r bound (D <= -d^r - 4r d^{r-1}, B <= d^r).
/// Informational only: it fails for large d.
VerificationReport check_Q_printed_even(double delta, std::size_t r_max);

/// D_{a,r} <= D_{0,r}, B_{a,r} <= B_{0,r}, D_{0,r} + B_{0,r} <= 0 for r <= r_max.
VerificationReport check_R(double alpha, double delta, std::size_t r_max);

/// F_{alpha,n} changes sign exactly once on a log-spaced grid, from - to +.
VerificationReport check_F_sign_property(const ModelParams& params);

/// Excursion profile: f(0) = B, f'(0) = 0, f'' > 0 and f(y) >= y on [0, C],
/// boundary conditions at C, drift sign on the stopping boundary.
VerificationReport lemma_checks_excursion(std::size_t grid_points = 10000);

/// g(z) >= z^{n/2} on [0, Z], h(t, q) <= 0 on the stopping region, value
/// matching, smooth fit, ODE and PDE residuals.
VerificationReport lemma_checks(const ModelParams& params, std::size_t grid_points = 10000);

/// Parameter grid for the suites.
const std::vector<double>& parameter_grid();

VerificationReport lemma_suite();
VerificationReport appendix_suite();

}  // namespace besselstop
