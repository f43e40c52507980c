#include "besselstop/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <sstream>
#include <stdexcept>

#include "besselstop/boundary.hpp"
#include "besselstop/bridge_sim.hpp"
#include "besselstop/oracles.hpp"
#include "besselstop/value_function.hpp"
#include "besselstop/verification.hpp"

namespace besselstop {

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::ostringstream stream() {
    std::ostringstream s;
    s.precision(10);
    return s;
}

Outcome excursion_constant() {
    const auto r = find_C_excursion(1e-8);
    auto s = stream();
    s << "C=" << r.value << " |C-1.50339538|=" << std::abs(r.value - 1.50339538);
    return {std::abs(r.value - 1.50339538) <= 1e-6, s.str()};
}

Outcome series_excursion() {
    const double C = find_C_excursion(1e-12).value;
    const double Z = find_Z(ModelParams(3.0, 1.0)).value;
    const double dev = std::abs(Z - C * C);
    auto s = stream();
    s << "Z(3,1)=" << Z << " C^2=" << C * C << " dev=" << dev;
    return {dev <= 1e-8, s.str()};
}

Outcome closed_form_roots() {
    bool ok = true;
    double worst = std::abs(find_Z(ModelParams(1.0, 1.0)).value - 1.0);
    ok = worst <= 1e-10;
    for (double n : {0.5, 1.0, 2.0, 3.0, 5.0}) {
        const double dev = std::abs(find_Z(ModelParams(n, n)).value - n);
        ok = ok && dev <= 1e-8;
        worst = std::max(worst, dev);
    }
    auto s = stream();
    s << "max |Z(n,n)-n|=" << worst;
    return {ok, s.str()};
}

Outcome proposition() {
    double worst = 1e300;
    int count = 0;
    for (double a : parameter_grid())
        for (double n : parameter_grid()) {
            worst = std::min(worst, proposition_margin(ModelParams(a, n)));
            ++count;
        }
    auto s = stream();
    s << count << " points, min margin=" << worst;
    return {worst >= 0.0, s.str()};
}

Outcome ode_oracle() {
    const std::vector<double> grid{0.5, 1.0, 2.0, 3.0, 5.0};
    double worst_dev = 0.0;
    double worst_err = 0.0;
    for (double a : grid)
        for (double n : grid) {
            const ModelParams p(a, n);
            const double Z = find_Z(p).value;
            worst_dev = std::max(worst_dev, std::abs(Z_from_ode(p) - Z));
            worst_err = std::max(worst_err, ode_shoot(p, 2.0 * Z).max_local_error);
        }
    auto s = stream();
    s << "max |Z_ode-Z|=" << worst_dev << " max local error=" << worst_err;
    return {worst_dev <= 1e-6 && worst_err <= kOdeResidualTol, s.str()};
}

Outcome lattice_oracle() {
    bool ok = true;
    auto s = stream();
    const auto& ex = excursion_solution();
    const double target31 = 2.0 * ex.C * std::exp(-0.5 * ex.C * ex.C);
    for (auto [a, n] : std::vector<std::pair<double, double>>{{3.0, 1.0}, {2.0, 2.0}, {1.0, 1.0}}) {
        const ModelParams p(a, n);
        const double U = U_star(build_candidate(p), 0.0, 0.0);
        const double target = (a == 3.0 && n == 1.0) ? target31 : U;
        const double dp = dp_value(p).value_at_origin;
        const double rel = std::abs(dp - target) / target;
        ok = ok && rel <= 0.02 && std::abs(dp - U) / U <= 0.02;
        s << "(" << a << "," << n << ") dp=" << dp << " U*=" << U << " rel=" << rel << "; ";
    }
    return {ok, s.str()};
}

Outcome monte_carlo(const AcceptanceOptions& opt) {
    bool ok = true;
    auto s = stream();
    const auto& ex = excursion_solution();
    struct Case {
        double alpha, n, Z, target;
    };
    const std::vector<Case> cases{
        {3.0, 1.0, ex.C * ex.C, 2.0 * ex.C * std::exp(-0.5 * ex.C * ex.C)},
        {1.0, 1.0, find_Z(ModelParams(1.0, 1.0)).value, std::exp(-0.5)}};
    for (const auto& c : cases) {
        SimConfig cfg;
        cfg.params = ModelParams(c.alpha, c.n);
        cfg.n_paths = opt.paths;
        cfg.n_steps = opt.steps;
        cfg.seed = opt.seed;
        cfg.scheme = Scheme::exact_integer_dim;
        const auto r = mc_estimate(cfg, ThresholdPolicy(c.Z));
        const double tol = std::max(3.0 * r.std_error, 0.01 * c.target);
        ok = ok && std::abs(r.mean - c.target) <= tol;
        s << "(" << c.alpha << "," << c.n << ") mean=" << r.mean << " se=" << r.std_error
          << " target=" << c.target << "; ";
    }
    return {ok, s.str()};
}

Outcome optimality(const AcceptanceOptions& opt) {
    SimConfig cfg;
    cfg.params = ModelParams(3.0, 1.0);
    cfg.n_paths = opt.paths;
    cfg.n_steps = opt.steps;
    cfg.seed = opt.seed;
    const double C = excursion_solution().C;
    const auto rows = policy_sweep(cfg, C * C, {0.5, 0.75, 1.0, 1.5, 2.0});
    bool ok = true;
    auto s = stream();
    for (const auto& r : rows) {
        if (r.multiplier == 1.0) continue;
        ok = ok && r.paired_diff_mean >= -r.paired_diff_stderr;
        s << "m=" << r.multiplier << " diff=" << r.paired_diff_mean << "+-" << r.paired_diff_stderr
          << "; ";
    }
    return {ok, s.str()};
}

Outcome suite(const VerificationReport& report) {
    auto s = stream();
    s << report.passed() << "/" << report.total() << " checks";
    if (const auto* f = report.first_failure())
        s << ", first failure " << f->name << " margin=" << f->margin;
    return {report.all_passed(), s.str()};
}

struct Spec {
    const char* name;
    double limit;
};

Spec spec_of(int id) {
    switch (id) {
        case 1: return {"excursion constant", 1.0};
        case 2: return {"series/excursion consistency", 1.0};
        case 3: return {"closed-form roots", 1.0};
        case 4: return {"root lower bound on grid", 5.0};
        case 5: return {"ODE oracle agreement", 30.0};
        case 6: return {"lattice oracle", 120.0};
        case 7: return {"Monte Carlo headline", 120.0};
        case 8: return {"empirical optimality", 300.0};
        case 9: return {"lemma suite", 30.0};
        case 10: return {"appendix suite", 30.0};
        default: break;
    }
    throw std::invalid_argument("acceptance criterion id must be in 1..10");
}

}  // namespace

AcceptanceRow run_criterion(int id, const AcceptanceOptions& options) {
    const auto spec = spec_of(id);
    AcceptanceRow row;
    row.id = id;
    row.name = spec.name;
    row.limit_seconds = spec.limit;
    const auto start = std::chrono::steady_clock::now();
    Outcome out{false, ""};
    try {
        switch (id) {
            case 1: out = excursion_constant(); break;
            case 2: out = series_excursion(); break;
            case 3: out = closed_form_roots(); break;
            case 4: out = proposition(); break;
            case 5: out = ode_oracle(); break;
            case 6: out = lattice_oracle(); break;
            case 7: out = monte_carlo(options); break;
            case 8: out = optimality(options); break;
            case 9: out = suite(lemma_suite()); break;
            case 10: out = suite(appendix_suite()); break;
        }
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    row.pass = out.pass && row.seconds < row.limit_seconds;
    row.detail = out.detail;
    if (out.pass && !row.pass) row.detail += " (over time limit)";
    return row;
}

std::vector<AcceptanceRow> run_acceptance(const AcceptanceOptions& options) {
    std::vector<AcceptanceRow> rows;
    for (int id = 1; id <= 10; ++id) {
        if (!options.only.empty() &&
            std::find(options.only.begin(), options.only.end(), id) == options.only.end())
            continue;
        rows.push_back(run_criterion(id, options));
        if (options.on_row) options.on_row(rows.back());
    }
    return rows;
}

}  // namespace besselstop
