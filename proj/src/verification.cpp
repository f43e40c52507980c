#include "besselstop/verification.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "besselstop/boundary.hpp"
#include "besselstop/quadrature.hpp"
#include "besselstop/value_function.hpp"

namespace besselstop {

namespace {

std::string fmt(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

std::string label(const std::string& base, double a, double b) {
    return base + "(" + fmt(a) + "," + fmt(b) + ")";
}

}  // namespace

// ---------------------------------------------------------------------------
// Lambda family

double gamma_of(const ModelParams& params) {
    return 0.5 * (params.alpha() - params.n() - 2.0);
}

long double lambda_eval(const LambdaParams& p) {
    const long double z = static_cast<long double>(p.n) + p.gamma;
    const long double shift = 0.5L * p.n + p.Delta + 1.0L + p.gamma;
    if (!(z > 0.0L)) throw std::invalid_argument("lambda_eval: requires n + gamma > 0");
    if (!(shift > 0.0L)) throw std::invalid_argument("lambda_eval: requires n/2 + Delta + 1 + gamma > 0");
    if (!(p.n > 0.0)) throw std::invalid_argument("lambda_eval: requires n > 0");

    const long double ln2 = std::log(2.0L);
    const long double log_z = std::log(z);
    const long double half_n = 0.5L * p.n;
    const std::size_t cap = p.K > 0 ? p.K : 20000;
    long double sum = 0.0L;
    long double largest = 0.0L;
    for (std::size_t k = 0; k <= cap; ++k) {
        const long double kk = static_cast<long double>(k);
        const long double log_weight = kk * (log_z - ln2) - std::lgamma(kk + 1.0L) +
                                       std::lgamma(kk + half_n) - std::lgamma(kk + shift) -
                                       static_cast<long double>(p.Delta) * ln2;
        const long double bracket = 2.0L * p.D * kk + p.B * static_cast<long double>(p.n);
        const long double term = bracket == 0.0L ? 0.0L : bracket * std::exp(log_weight);
        sum += term;
        largest = std::max(largest, std::fabs(term));
        if (p.K == 0 && kk > 2.0L * z + 10.0L && std::fabs(term) <= 1e-21L * largest) break;
    }
    return sum;
}

LambdaParams lambda_shift(const LambdaParams& p) {
    const long double z = static_cast<long double>(p.n) + p.gamma;
    LambdaParams next = p;
    next.D = z * p.D + p.B * p.n;
    next.B = z * p.D + (p.n + 2.0L * p.Delta + 2.0L + 2.0L * p.gamma) * p.B;
    next.Delta = p.Delta + 1.0;
    return next;
}

VerificationReport lambda_iterate_invariance(const LambdaParams& p, std::size_t steps) {
    VerificationReport report;
    const long double base = lambda_eval(p);
    const long double scale = base == 0.0L ? 1.0L : std::fabs(base);
    LambdaParams stage = p;
    for (std::size_t r = 0; r <= steps; ++r) {
        const long double v = lambda_eval(stage);
        report.expect_margin(label("lambda_invariance", p.n, p.gamma) + "[" + std::to_string(r) + "]",
                             static_cast<double>(std::fabs(v - base) / scale), 1e-8);
        stage = lambda_shift(stage);
    }
    return report;
}

long double H_lambda(const ModelParams& params) {
    LambdaParams p;
    p.n = params.n();
    p.gamma = gamma_of(params);
    return lambda_eval(p);
}

double H_from_series(const ModelParams& params) {
    const double gamma = gamma_of(params);
    const double z = params.n() + gamma;
    const auto table = build_coefficients(params, std::max(1.0, z));
    return std::exp(std::lgamma(0.5 * params.n()) - std::lgamma(0.5 * params.alpha())) *
           F_eval(table, z);
}

// ---------------------------------------------------------------------------
// (D, B) iterations

std::vector<IterState> iterate_DB(Parameterization form, double first, double second,
                                  std::size_t r_max) {
    std::vector<IterState> out;
    out.reserve(r_max + 1);
    IterState s;
    s.parameterization = form;
    s.first = first;
    s.second = second;
    out.push_back(s);
    const long double a = first;
    const long double b = second;
    for (std::size_t r = 0; r < r_max; ++r) {
        const long double rr = static_cast<long double>(r);
        IterState next = s;
        next.r = r + 1;
        if (form == Parameterization::gamma_form) {
            // (n, gamma) = (a, b)
            next.D = (a + b) * s.D + a * s.B;
            next.B = (a + b) * s.D + (a + 2.0L * rr + 2.0L + 2.0L * b) * s.B;
        } else {
            // (alpha, delta) = (a, b)
            next.D = s.D * (a + b) + s.B * (a + 2.0L + 2.0L * b);
            next.B = s.D * (a + b) + s.B * (2.0L * rr + a);
        }
        out.push_back(next);
        s = next;
    }
    return out;
}

double DeltaPolynomial::operator()(double delta) const {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * delta + static_cast<double>(*it);
    return acc;
}

DeltaPolynomial& DeltaPolynomial::trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    return *this;
}

bool operator==(const DeltaPolynomial& a, const DeltaPolynomial& b) {
    DeltaPolynomial x = a;
    DeltaPolynomial y = b;
    return x.trim().coeffs == y.trim().coeffs;
}

namespace {

DeltaPolynomial add(const DeltaPolynomial& a, const DeltaPolynomial& b) {
    DeltaPolynomial out;
    out.coeffs.assign(std::max(a.coeffs.size(), b.coeffs.size()), 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) out.coeffs[i] += a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) out.coeffs[i] += b.coeffs[i];
    return out.trim();
}

// (c0 + c1 delta) * p
DeltaPolynomial mul_linear(const DeltaPolynomial& p, long long c0, long long c1) {
    DeltaPolynomial out;
    out.coeffs.assign(p.coeffs.size() + 1, 0);
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
        out.coeffs[i] += c0 * p.coeffs[i];
        out.coeffs[i + 1] += c1 * p.coeffs[i];
    }
    return out.trim();
}

}  // namespace

std::vector<std::pair<DeltaPolynomial, DeltaPolynomial>> iterate_delta_polynomials(int j_max) {
    std::vector<std::pair<DeltaPolynomial, DeltaPolynomial>> out;
    DeltaPolynomial D{{1}};
    DeltaPolynomial B{{-1}};
    out.emplace_back(D, B);
    for (int r = 0; r < j_max; ++r) {
        // D' = delta D + 2(1 + delta) B,  B' = delta D + 2r B
        DeltaPolynomial nd = add(mul_linear(D, 0, 1), mul_linear(B, 2, 2));
        DeltaPolynomial nb = add(mul_linear(D, 0, 1), mul_linear(B, 2LL * r, 0));
        D = std::move(nd);
        B = std::move(nb);
        out.emplace_back(D, B);
    }
    return out;
}

std::pair<DeltaPolynomial, DeltaPolynomial> table1_row(int j) {
    // Coefficients listed from delta^0 upward.
    switch (j) {
        case 2: return {{{0, 0, 1}}, {{0, 0, -1}}};
        case 3: return {{{0, 0, -2, -1}}, {{0, 0, -4, 1}}};
        case 4: return {{{0, 0, -8, -8, 1}}, {{0, 0, -24, 4, -1}}};
        case 5: return {{{0, 0, -48, -48, -2, -1}}, {{0, 0, -192, 24, -16, 1}}};
        case 6: return {{{0, 0, -384, -384, -32, -32, 1}}, {{0, 0, -1920, 192, -208, 8, -1}}};
        case 7:
            return {{{0, 0, -3840, -3840, -416, -432, -18, -1}},
                    {{0, 0, -23040, 1920, -2880, 64, -44, 1}}};
        default: break;
    }
    throw std::invalid_argument("table1_row: j must be in 2..7");
}

std::pair<double, double> table1_polynomials(double delta, int j) {
    const auto [D, B] = table1_row(j);
    return {D(delta), B(delta)};
}

VerificationReport check_table1() {
    VerificationReport report;
    const auto exact = iterate_delta_polynomials(7);
    for (int j = 2; j <= 7; ++j) {
        const auto [D, B] = table1_row(j);
        report.expect_margin("table1_D[" + std::to_string(j) + "]", D == exact[j].first ? 0.0 : 1.0, 0.0);
        report.expect_margin("table1_B[" + std::to_string(j) + "]", B == exact[j].second ? 0.0 : 1.0, 0.0);
    }
    return report;
}

VerificationReport check_P(double n, double gamma, std::size_t r_max) {
    if (!(n > 0.0) || !(gamma > 0.0)) throw std::invalid_argument("check_P: n, gamma must be > 0");
    VerificationReport report;
    const auto r0 = static_cast<std::size_t>(std::floor(gamma * gamma / (2.0 * n))) + 1;
    const auto seq = iterate_DB(Parameterization::gamma_form, n, gamma, std::max(r_max, r0 + 1));
    const long double g = gamma;
    const std::string tag = label("P", n, gamma);
    for (std::size_t r = 0; r <= r_max; ++r) {
        const long double gr = std::pow(g, static_cast<long double>(r));
        report.expect_le(tag + "_D[" + std::to_string(r) + "]", seq[r].D, gr);
        report.expect_le(tag + "_B[" + std::to_string(r) + "]", seq[r].B,
                         -gr * (1.0L + 2.0L * static_cast<long double>(r) / g));
    }
    report.expect_lt(tag + "_terminal_D[" + std::to_string(r0 + 1) + "]", seq[r0 + 1].D, 0.0L);
    return report;
}

namespace {

std::size_t first_terminal_odd(double delta) {
    std::size_t r = 7;
    while (!(2.0 * static_cast<double>(r) > delta)) r += 2;
    return r;
}

}  // namespace

VerificationReport check_Q(double delta, std::size_t r_max) {
    if (!(delta > 0.0)) throw std::invalid_argument("check_Q: delta must be > 0");
    VerificationReport report;
    const std::size_t r_star = first_terminal_odd(delta);
    const auto seq = iterate_DB(Parameterization::delta_form, 0.0, delta, std::max(r_max, r_star));
    const long double d = delta;
    const std::string tag = "Q(" + fmt(delta) + ")";
    for (std::size_t r = 7; r <= r_max; ++r) {
        const long double rr = static_cast<long double>(r);
        const long double dr = std::pow(d, rr);
        const long double dr1 = std::pow(d, rr - 1.0L);
        const std::string idx = "[" + std::to_string(r) + "]";
        if (r % 2 == 1) {
            report.expect_le(tag + "_D" + idx, seq[r].D, -dr - 2.0L * rr * dr1);
            report.expect_le(tag + "_B" + idx, seq[r].B, dr - 2.0L * rr * dr1);
        } else {
            report.expect_le(tag + "_D" + idx, seq[r].D, dr - 4.0L * rr * dr1);
            report.expect_le(tag + "_B" + idx, seq[r].B, -dr);
        }
    }
    report.expect_lt(tag + "_terminal_D[" + std::to_string(r_star) + "]", seq[r_star].D, 0.0L);
    report.expect_lt(tag + "_terminal_B[" + std::to_string(r_star) + "]", seq[r_star].B, 0.0L);
    return report;
}

VerificationReport check_Q_printed_even(double delta, std::size_t r_max) {
    VerificationReport report;
    const auto seq = iterate_DB(Parameterization::delta_form, 0.0, delta, r_max);
    const long double d = delta;
    for (std::size_t r = 8; r <= r_max; r += 2) {
        const long double rr = static_cast<long double>(r);
        const long double dr = std::pow(d, rr);
        const std::string idx = "[" + std::to_string(r) + "]";
        report.expect_le("Q_printed(" + fmt(delta) + ")_D" + idx, seq[r].D,
                         -dr - 4.0L * rr * std::pow(d, rr - 1.0L));
        report.expect_le("Q_printed(" + fmt(delta) + ")_B" + idx, seq[r].B, dr);
    }
    return report;
}

VerificationReport check_R(double alpha, double delta, std::size_t r_max) {
    if (!(alpha > 0.0) || !(delta > 0.0)) throw std::invalid_argument("check_R: alpha, delta must be > 0");
    VerificationReport report;
    const auto with_alpha = iterate_DB(Parameterization::delta_form, alpha, delta, r_max);
    const auto at_zero = iterate_DB(Parameterization::delta_form, 0.0, delta, r_max);
    const std::string tag = label("R", alpha, delta);
    for (std::size_t r = 0; r <= r_max; ++r) {
        const std::string idx = "[" + std::to_string(r) + "]";
        report.expect_le(tag + "_D" + idx, with_alpha[r].D, at_zero[r].D);
        report.expect_le(tag + "_B" + idx, with_alpha[r].B, at_zero[r].B);
        report.expect_le(tag + "_sum" + idx, at_zero[r].D + at_zero[r].B, 0.0L);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Value-function checks

VerificationReport check_F_sign_property(const ModelParams& params) {
    VerificationReport report;
    const double Z = find_Z(params).value;
    const double hi = 8.0 * std::max(1.0, Z);
    const auto table = build_coefficients(params, hi);
    const std::string tag = label("F_sign", params.alpha(), params.n());

    report.expect_close(tag + "_at_zero", F_eval(table, 0.0), -params.n(), 1e-15);
    const int points = 400;
    const double lo = 1e-6 * std::max(1.0, Z);
    int changes = 0;
    double prev = F_eval(table, 0.0);
    double crossing = 0.0;
    for (int i = 0; i < points; ++i) {
        const double z = lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1));
        const double f = F_eval(table, z);
        if ((prev < 0.0) != (f < 0.0)) {
            ++changes;
            crossing = z;
        }
        prev = f;
    }
    report.expect_margin(tag + "_sign_changes", std::abs(changes - 1), 0.0);
    report.expect_margin(tag + "_positive_at_end", prev > 0.0 ? 0.0 : 1.0, 0.0);
    // The crossing grid point lies just past Z (grid ratio ~1.05).
    report.expect_margin(tag + "_crossing_near_Z", std::abs(crossing / Z - 1.0), 0.06);
    return report;
}

VerificationReport lemma_checks_excursion(std::size_t grid_points) {
    VerificationReport report;
    const auto& ex = excursion_solution();
    const auto prof = make_excursion_profile(ex);
    const double C = ex.C;

    report.expect_close("excursion_f(0)=B", prof.f(0.0), ex.B, 1e-13);
    report.expect_close("excursion_B_identity", ex.B, 2.0 * C * std::exp(-0.5 * C * C), 1e-10);
    report.expect_margin("excursion_f'(0)=0", std::abs(prof.f_prime(0.0)), 1e-14);
    report.expect_close("excursion_f(C)=C", prof.f(C), C, 1e-10);
    report.expect_close("excursion_f'(C)=1", prof.f_prime(C), 1.0, 1e-9);

    double min_fpp = 1e300;
    double min_gap = 1e300;
    for (std::size_t i = 0; i <= grid_points; ++i) {
        const double y = C * static_cast<double>(i) / static_cast<double>(grid_points);
        if (i > 0) min_fpp = std::min(min_fpp, prof.f_second(y));
        min_gap = std::min(min_gap, prof.f(y) - y);
    }
    report.expect_lt("excursion_convex(min f'')", 0.0L, min_fpp);
    report.expect_margin("excursion_f>=y", -min_gap, 1e-12);

    for (int i = 1; i <= 20; ++i) {
        const double y = C * i / 20.0;
        const double quad = ex.B / y * exp_half_square_integral(y);
        report.expect_close("excursion_series_vs_quadrature[" + std::to_string(i) + "]",
                            prof.f(y), quad, 1e-11);
    }

    // Drift of x on the stopping region at x = c(t): x^{-1}(1 - x^2/(1-t)).
    for (int i = 0; i < 10; ++i) {
        const double t = 0.1 * i;
        const double x = C * std::sqrt(1.0 - t);
        const double drift = (1.0 - x * x / (1.0 - t)) / x;
        const std::string idx = "[" + fmt(t) + "]";
        report.expect_close("excursion_drift_closed_form" + idx, drift,
                            (1.0 / C - C) / std::sqrt(1.0 - t), 1e-12);
        report.expect_lt("excursion_drift_negative" + idx, drift, 0.0L);
    }
    return report;
}

VerificationReport lemma_checks(const ModelParams& params, std::size_t grid_points) {
    VerificationReport report;
    const auto sol = build_candidate(params);
    const double n = params.n();
    const double Z = sol.Z;
    const std::string tag = label("", params.alpha(), n);

    double worst_majorant = -1e300;
    for (std::size_t i = 0; i <= grid_points; ++i) {
        const double z = Z * static_cast<double>(i) / static_cast<double>(grid_points);
        const double g = sol.E1 * psi_eval(sol.table, z);
        const double pay = z > 0.0 ? std::pow(z, 0.5 * n) : 0.0;
        worst_majorant = std::max(worst_majorant, (pay - g) / std::max(1.0, g));
    }
    report.expect_margin("majorant" + tag, worst_majorant, 1e-12);

    double worst_match = 0.0;
    double worst_fit = 0.0;
    double worst_h = -1e300;
    double worst_pde = 0.0;
    double worst_scaling = 0.0;
    const double drift_level = 0.5 * (params.alpha() + n - 2.0);
    for (int i = 0; i < 10; ++i) {
        const double t = 0.1 * i;
        const double s = 1.0 - t;
        const double zt = Z * s;
        const double inside = sol.E1 * std::pow(s, 0.5 * n) * psi_eval(sol.table, Z);
        worst_match = std::max(worst_match, std::abs(inside - std::pow(zt, 0.5 * n)));
        worst_fit = std::max(worst_fit, smooth_fit_residual(sol, t));
        for (int j = 0; j <= 20; ++j) {
            const double q = zt * (1.0 + 0.1 * j);
            const double h = n * std::pow(q, 0.5 * n - 1.0) * (drift_level - q / s);
            worst_h = std::max(worst_h, h);
        }
        for (int j = 0; j < 50; ++j) {
            const double q = zt * j / 50.0;
            worst_pde = std::max(worst_pde, std::abs(pde_residual(sol, t, q)));
            const double direct = U_star(sol, t, q);
            const double scaled = std::pow(s, 0.5 * n) * U_star(sol, 0.0, q / s);
            worst_scaling = std::max(worst_scaling, std::abs(direct - scaled) / std::max(1.0, direct));
        }
    }
    report.expect_margin("value_matching" + tag, worst_match, 1e-10);
    report.expect_margin("smooth_fit" + tag, worst_fit, 1e-9);
    report.expect_margin("stopping_drift_h<=0" + tag, worst_h, 0.0);
    report.expect_margin("pde_residual" + tag, worst_pde, 1e-8);
    report.expect_margin("scaling" + tag, worst_scaling, 1e-12);

    double worst_ode = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double y = 2.0 * Z * i / 999.0;
        worst_ode = std::max(worst_ode, std::abs(ode_residual(sol.table, y)) /
                                            (1.0 + psi_eval(sol.table, y)));
    }
    report.expect_margin("psi_ode_residual" + tag, worst_ode, 1e-9);
    return report;
}

const std::vector<double>& parameter_grid() {
    static const std::vector<double> grid{0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 8.0, 10.0};
    return grid;
}

VerificationReport lemma_suite() {
    VerificationReport report = lemma_checks_excursion();
    for (double a : parameter_grid())
        for (double n : parameter_grid()) report.merge(lemma_checks(ModelParams(a, n)));
    return report;
}

VerificationReport appendix_suite() {
    VerificationReport report;

    const std::vector<std::pair<double, double>> gamma_cases{
        {1.0, -0.5}, {3.0, -1.5}, {2.0, 1.5}, {1.0, 2.0}, {0.5, 5.0}};
    for (const auto& [n, g] : gamma_cases) {
        LambdaParams p;
        p.n = n;
        p.gamma = g;
        report.merge(lambda_iterate_invariance(p, 12));
    }
    const std::vector<std::pair<double, double>> delta_cases{{0.5, 1.0}, {2.0, 3.0}, {1.0, 0.5}};
    for (const auto& [a, d] : delta_cases) {
        LambdaParams p;
        p.n = a + 2.0 + 2.0 * d;
        p.gamma = -2.0 - d;
        report.merge(lambda_iterate_invariance(p, 12), "delta_form_");
    }

    for (double a : parameter_grid()) {
        for (double n : parameter_grid()) {
            const ModelParams params(a, n);
            report.merge(check_F_sign_property(params));
            if (a + n <= 2.0) continue;
            const long double H = H_lambda(params);
            const double H_series = H_from_series(params);
            report.expect_lt(label("H<0", a, n), H, 0.0L);
            report.expect_margin(label("H_identity", a, n),
                                 static_cast<double>(std::fabs(H - H_series) / std::fabs(H)), 1e-9);
        }
    }

    report.merge(check_table1());
    for (double n : {0.25, 0.5, 1.0, 2.0, 5.0})
        for (double g : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) report.merge(check_P(n, g, 60));
    for (double d : {0.05, 0.1, 0.5, 1.0, 2.0, 3.0, 5.0, 10.0, 20.0, 50.0})
        report.merge(check_Q(d, 60));
    for (double a : {0.25, 0.5, 1.0, 2.0, 5.0, 10.0})
        for (double d : {0.1, 0.5, 1.0, 4.0, 10.0}) report.merge(check_R(a, d, 60));
    return report;
}

}  // namespace besselstop
