#include "besselstop/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <locale>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "besselstop/acceptance.hpp"
#include "besselstop/boundary.hpp"
#include "besselstop/errors.hpp"
#include "besselstop/oracles.hpp"
#include "besselstop/verification.hpp"

namespace besselstop {

namespace {

using nlohmann::json;

const std::vector<std::pair<Command, std::string_view>>& command_names() {
    static const std::vector<std::pair<Command, std::string_view>> names{
        {Command::boundary, "boundary"},
        {Command::coeffs, "coeffs"},
        {Command::value, "value"},
        {Command::simulate, "simulate"},
        {Command::sweep, "sweep"},
        {Command::dp_oracle, "dp-oracle"},
        {Command::ode_oracle, "ode-oracle"},
        {Command::verify_appendix, "verify-appendix"},
        {Command::verify_lemmas, "verify-lemmas"},
        {Command::acceptance, "acceptance"}};
    return names;
}

// Locale-independent CSV writer, 10 significant digits.
class Csv {
public:
    explicit Csv(const json& config) {
        os_.imbue(std::locale::classic());
        os_ << std::setprecision(10);
        os_ << "# config " << config.dump() << '\n';
    }
    Csv& header(std::initializer_list<std::string_view> cols) {
        bool first = true;
        for (auto c : cols) {
            if (!first) os_ << ',';
            os_ << c;
            first = false;
        }
        os_ << '\n';
        return *this;
    }
    template <typename T>
    Csv& cell(const T& v) {
        if (started_) os_ << ',';
        started_ = true;
        if constexpr (std::is_same_v<T, bool>)
            os_ << (v ? "true" : "false");
        else
            os_ << v;
        return *this;
    }
    Csv& end() {
        os_ << '\n';
        started_ = false;
        return *this;
    }
    std::string str() const { return os_.str(); }

private:
    std::ostringstream os_;
    bool started_ = false;
};

json nan_to_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json root_json(const RootResult& r) {
    return {{"value", r.value},
            {"residual", r.residual},
            {"iterations", r.iterations},
            {"bracket", {r.bracket_lo, r.bracket_hi}},
            {"method", std::string(to_string(r.method))}};
}

json mc_json(const MCResult& r) {
    return {{"mean", r.mean},
            {"stderr", r.std_error},
            {"n_paths", r.n_paths},
            {"ci95", {r.ci95.first, r.ci95.second}},
            {"stop_fraction", r.stop_fraction},
            {"low_path_count", r.low_path_count}};
}

SimConfig sim_config(const RunConfig& c) {
    SimConfig s;
    s.params = ModelParams(c.alpha, c.n);
    s.t0 = c.t0;
    s.q0 = c.q0;
    s.n_paths = c.paths;
    s.n_steps = c.steps;
    s.seed = c.seed;
    s.eps_end = c.eps_end;
    if (c.scheme == "auto") {
        const bool integer = c.alpha >= 1.0 && std::floor(c.alpha) == c.alpha;
        s.scheme = integer && c.t0 == 0.0 && c.q0 == 0.0 ? Scheme::exact_integer_dim
                                                         : Scheme::euler_full_truncation;
    } else {
        s.scheme = scheme_from_string(c.scheme);
    }
    s.validate();
    return s;
}

std::string report_csv(const json& config, const VerificationReport& report) {
    Csv csv(config);
    csv.header({"name", "pass", "margin", "tolerance"});
    for (const auto& c : report.checks())
        csv.cell(c.name).cell(c.pass).cell(c.margin).cell(c.tolerance).end();
    return csv.str();
}

void run_boundary(const RunConfig& c, ResultEnvelope& env) {
    const ModelParams p(c.alpha, c.n);
    const auto root = find_Z(p, c.tol);
    const auto sol = build_candidate(p, c.tol);
    const auto C = find_C_excursion(std::min(c.tol, kDefaultCTol));
    json curve = json::array();
    for (std::size_t i = 0; i < c.t_points; ++i) {
        const double t = c.t_points > 1 ? static_cast<double>(i) / static_cast<double>(c.t_points - 1) : 0.0;
        curve.push_back({{"t", t},
                         {"z_q", boundary_q(sol, t)},
                         {"x_boundary", boundary_x(sol, t)},
                         {"value_at_zero", t < 1.0 ? json(U_star(sol, t, 0.0)) : json(0.0)}});
    }
    env.results = {{"Z", root.value},
                   {"root", root_json(root)},
                   {"E1", sol.E1},
                   {"C", C.value},
                   {"margin", proposition_margin(p)},
                   {"closed_form_Z", nullptr},
                   {"curve", curve}};
    if (const auto cf = closed_form_Z(p)) env.results["closed_form_Z"] = *cf;
    env.csv = "# config " + env.config.dump() + "\n" + emit_boundary_curve(sol, c.t_points);
}

void run_coeffs(const RunConfig& c, ResultEnvelope& env) {
    const auto table = build_default_coefficients(ModelParams(c.alpha, c.n));
    env.results = {{"order", table.order()},
                   {"ymax", table.ymax()},
                   {"eps", table.eps()},
                   {"coeffs", table.coeffs()}};
    Csv csv(env.config);
    csv.header({"k", "A_k"});
    for (std::size_t k = 0; k <= table.order(); ++k) csv.cell(k).cell(table[k]).end();
    env.csv = csv.str();
}

void run_value(const RunConfig& c, ResultEnvelope& env) {
    const ModelParams p(c.alpha, c.n);
    const auto sol = build_candidate(p, c.tol);
    const double U = U_star(sol, c.t0, c.q0);
    const bool cont = c.q0 < boundary_q(sol, c.t0);
    env.results = {{"U", U},
                   {"V", V_star(sol, c.t0, std::sqrt(c.q0))},
                   {"Z", sol.Z},
                   {"E1", sol.E1},
                   {"continuation", cont},
                   {"explicit", nullptr}};
    if (const auto e = explicit_special_values(p, c.t0, c.q0)) env.results["explicit"] = *e;
    Csv csv(env.config);
    csv.header({"t0", "q0", "U", "Z", "E1", "continuation"});
    csv.cell(c.t0).cell(c.q0).cell(U).cell(sol.Z).cell(sol.E1).cell(cont).end();
    env.csv = csv.str();
}

void run_simulate(const RunConfig& c, ResultEnvelope& env) {
    const auto s = sim_config(c);
    const auto sol = build_candidate(s.params, c.tol);
    const auto r = mc_estimate(s, ThresholdPolicy(sol.Z));
    const double target = U_star(sol, c.t0, c.q0);
    env.results = mc_json(r);
    env.results["scheme"] = std::string(to_string(s.scheme));
    env.results["Z"] = sol.Z;
    env.results["U_star"] = target;
    Csv csv(env.config);
    csv.header({"scheme", "Z", "mean", "stderr", "ci_lo", "ci_hi", "stop_fraction", "U_star"});
    csv.cell(to_string(s.scheme)).cell(sol.Z).cell(r.mean).cell(r.std_error).cell(r.ci95.first)
        .cell(r.ci95.second).cell(r.stop_fraction).cell(target).end();
    env.csv = csv.str();
}

void run_sweep(const RunConfig& c, ResultEnvelope& env) {
    const auto s = sim_config(c);
    const double Z = find_Z(s.params, c.tol).value;
    const auto rows = policy_sweep(s, Z, c.multipliers);
    json out = json::array();
    for (const auto& r : rows) {
        json row = mc_json(r.result);
        row["multiplier"] = r.multiplier;
        row["Z_level"] = r.Z_level;
        row["candidate"] = r.multiplier == 1.0;
        row["paired_diff_mean"] = nan_to_null(r.paired_diff_mean);
        row["paired_diff_stderr"] = nan_to_null(r.paired_diff_stderr);
        row["candidate_not_worse"] =
            std::isfinite(r.paired_diff_mean) ? json(r.paired_diff_mean >= -r.paired_diff_stderr)
                                              : json(nullptr);
        out.push_back(row);
    }
    env.results = {{"scheme", std::string(to_string(s.scheme))}, {"Z", Z}, {"rows", out}};
    env.csv = "# config " + env.config.dump() + "\n" + emit_sweep_table(rows);
}

void run_dp(const RunConfig& c, ResultEnvelope& env) {
    const ModelParams p(c.alpha, c.n);
    LatticeConfig lc;
    lc.t_steps = c.lattice_t_steps;
    lc.q_steps = c.lattice_q_steps;
    lc.t0 = c.t0;
    const auto lat = dp_value(p, lc);
    const auto sol = build_candidate(p, c.tol);
    const double U = U_star(sol, c.t0, 0.0);
    json curve = json::array();
    Csv csv(env.config);
    csv.header({"t", "boundary_estimate", "z_q", "continuation_is_interval"});
    const std::size_t rows = lat.t_grid.size();
    const std::size_t stride = std::max<std::size_t>(1, rows / std::max<std::size_t>(1, c.t_points));
    for (std::size_t i = 0; i < rows; i += stride) {
        const double t = lat.t_grid[i];
        const bool interval = lat.continuation_is_interval[i];
        curve.push_back({{"t", t},
                         {"boundary_estimate", lat.boundary_estimate[i]},
                         {"z_q", boundary_q(sol, t)},
                         {"continuation_is_interval", interval}});
        csv.cell(t).cell(lat.boundary_estimate[i]).cell(boundary_q(sol, t)).cell(interval).end();
    }
    env.results = {{"value_at_origin", lat.value_at_origin},
                   {"U_star", U},
                   {"relative_difference", std::abs(lat.value_at_origin - U) / U},
                   {"lattice", {{"t_steps", lc.t_steps}, {"q_steps", lc.q_steps},
                                {"q_max", lat.q_grid.back()}, {"eps_end", lc.eps_end}}},
                   {"boundary", curve}};
    env.csv = csv.str();
}

void run_ode(const RunConfig& c, ResultEnvelope& env) {
    const ModelParams p(c.alpha, c.n);
    const double Z = find_Z(p, c.tol).value;
    const double Zo = Z_from_ode(p);
    const double err = ode_shoot(p, 2.0 * Z).max_local_error;
    env.results = {{"Z_ode", Zo}, {"Z_series", Z}, {"difference", std::abs(Zo - Z)},
                   {"max_local_error", err}, {"step", kDefaultOdeStep}};
    Csv csv(env.config);
    csv.header({"Z_ode", "Z_series", "difference", "max_local_error"});
    csv.cell(Zo).cell(Z).cell(std::abs(Zo - Z)).cell(err).end();
    env.csv = csv.str();
}

void run_verify(const VerificationReport& report, ResultEnvelope& env) {
    env.results = to_json(report);
    env.ok = report.all_passed();
    env.csv = report_csv(env.config, report);
}

void run_acceptance_cmd(const RunConfig& c, ResultEnvelope& env) {
    AcceptanceOptions opt;
    opt.paths = c.paths;
    opt.steps = c.steps;
    opt.seed = c.seed;
    const auto rows = run_acceptance(opt);
    json out = json::array();
    Csv csv(env.config);
    csv.header({"id", "name", "pass", "seconds", "limit_seconds", "detail"});
    for (const auto& r : rows) {
        out.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"seconds", r.seconds},
                       {"limit_seconds", r.limit_seconds}, {"detail", r.detail}});
        csv.cell(r.id).cell(r.name).cell(r.pass).cell(r.seconds).cell(r.limit_seconds)
            .cell("\"" + r.detail + "\"").end();
        env.ok = env.ok && r.pass;
    }
    env.results = {{"criteria", out}};
    env.csv = csv.str();
}

}  // namespace

std::string_view to_string(Command command) {
    for (const auto& [c, name] : command_names())
        if (c == command) return name;
    return "unknown";
}

Command command_from_string(std::string_view name) {
    for (const auto& [c, n] : command_names())
        if (n == name) return c;
    throw std::invalid_argument("unknown command '" + std::string(name) + "'");
}

json to_json(const RunConfig& c) {
    return {{"command", std::string(to_string(c.command))},
            {"alpha", c.alpha},
            {"n", c.n},
            {"t0", c.t0},
            {"q0", c.q0},
            {"tol", c.tol},
            {"paths", c.paths},
            {"steps", c.steps},
            {"seed", c.seed},
            {"multipliers", c.multipliers},
            {"out_format", c.out_format == OutFormat::json ? "json" : "csv"},
            {"out_path", c.out_path ? json(*c.out_path) : json(nullptr)},
            {"scheme", c.scheme},
            {"eps_end", c.eps_end},
            {"t_points", c.t_points},
            {"lattice_t_steps", c.lattice_t_steps},
            {"lattice_q_steps", c.lattice_q_steps},
            {"timing", c.timing}};
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    c.command = command_from_string(j.at("command").get<std::string>());
    c.alpha = j.at("alpha").get<double>();
    c.n = j.at("n").get<double>();
    c.t0 = j.at("t0").get<double>();
    c.q0 = j.at("q0").get<double>();
    c.tol = j.at("tol").get<double>();
    c.paths = j.at("paths").get<std::size_t>();
    c.steps = j.at("steps").get<std::size_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.multipliers = j.at("multipliers").get<std::vector<double>>();
    const auto fmt = j.at("out_format").get<std::string>();
    if (fmt != "json" && fmt != "csv") throw std::invalid_argument("out_format must be json or csv");
    c.out_format = fmt == "json" ? OutFormat::json : OutFormat::csv;
    if (!j.at("out_path").is_null()) c.out_path = j.at("out_path").get<std::string>();
    c.scheme = j.at("scheme").get<std::string>();
    c.eps_end = j.at("eps_end").get<double>();
    c.t_points = j.at("t_points").get<std::size_t>();
    c.lattice_t_steps = j.at("lattice_t_steps").get<std::size_t>();
    c.lattice_q_steps = j.at("lattice_q_steps").get<std::size_t>();
    c.timing = j.at("timing").get<bool>();
    return c;
}

json to_json(const ResultEnvelope& e) {
    return {{"tool_version", e.tool_version},
            {"config", e.config},
            {"results", e.results},
            {"timing", e.timing ? json(*e.timing) : json(nullptr)}};
}

ResultEnvelope run(const RunConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    ResultEnvelope env;
    env.config = to_json(config);
    ModelParams(config.alpha, config.n);
    if (!(config.tol > 0.0)) throw std::invalid_argument("tol must be positive");
    switch (config.command) {
        case Command::boundary: run_boundary(config, env); break;
        case Command::coeffs: run_coeffs(config, env); break;
        case Command::value: run_value(config, env); break;
        case Command::simulate: run_simulate(config, env); break;
        case Command::sweep: run_sweep(config, env); break;
        case Command::dp_oracle: run_dp(config, env); break;
        case Command::ode_oracle: run_ode(config, env); break;
        case Command::verify_appendix: run_verify(appendix_suite(), env); break;
        case Command::verify_lemmas: run_verify(lemma_suite(), env); break;
        case Command::acceptance: run_acceptance_cmd(config, env); break;
    }
    if (config.timing)
        env.timing = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return env;
}

std::string emit_boundary_curve(const CandidateSolution& sol, std::size_t t_points) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(10) << "t,z_q,x_boundary,value_at_zero\n";
    const std::size_t pts = std::max<std::size_t>(2, t_points);
    for (std::size_t i = 0; i < pts; ++i) {
        const double t = i + 1 == pts ? 1.0 : static_cast<double>(i) / static_cast<double>(pts - 1);
        const double v = t < 1.0 ? U_star(sol, t, 0.0) : 0.0;
        os << t << ',' << boundary_q(sol, t) << ',' << boundary_x(sol, t) << ',' << v << '\n';
    }
    return os.str();
}

std::string emit_sweep_table(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(10)
       << "multiplier,Z_level,mean,stderr,ci_lo,ci_hi,stop_fraction,candidate,paired_diff_mean,"
          "paired_diff_stderr,candidate_not_worse\n";
    for (const auto& r : rows) {
        const bool has_pair = std::isfinite(r.paired_diff_mean);
        os << r.multiplier << ',' << r.Z_level << ',' << r.result.mean << ',' << r.result.std_error
           << ',' << r.result.ci95.first << ',' << r.result.ci95.second << ','
           << r.result.stop_fraction << ',' << (r.multiplier == 1.0 ? "true" : "false") << ',';
        if (has_pair)
            os << r.paired_diff_mean << ',' << r.paired_diff_stderr << ','
               << (r.paired_diff_mean >= -r.paired_diff_stderr ? "true" : "false");
        else
            os << ",,";
        os << '\n';
    }
    return os.str();
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    std::string command;
    std::string format = "json";
    std::string out_path;
    std::string config_file;
    bool no_timing = false;

    CLI::App app{"Optimal stopping of squared Bessel bridges: boundary, value, oracles, simulation",
                 "besselstop"};
    std::vector<std::string> names;
    for (const auto& [c, n] : command_names()) names.emplace_back(n);
    app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(names));
    app.add_option("--alpha", cfg.alpha, "Bessel dimension (> 0)")->check(CLI::PositiveNumber);
    app.add_option("--n", cfg.n, "Payoff exponent (> 0)")->check(CLI::PositiveNumber);
    app.add_option("--t0", cfg.t0, "Start time in [0, 1)")->check(CLI::Range(0.0, 1.0));
    app.add_option("--q0", cfg.q0, "Start state (>= 0)")->check(CLI::NonNegativeNumber);
    app.add_option("--tol", cfg.tol, "Root tolerance")->check(CLI::PositiveNumber);
    app.add_option("--paths", cfg.paths, "Monte Carlo paths")->check(CLI::PositiveNumber);
    app.add_option("--steps", cfg.steps, "Time steps per path")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "Master seed");
    app.add_option("--multipliers", cfg.multipliers, "Threshold multipliers of Z")->delimiter(',');
    app.add_option("--scheme", cfg.scheme, "auto, exact or euler")
        ->check(CLI::IsMember({"auto", "exact", "euler"}));
    app.add_option("--eps-end", cfg.eps_end, "Euler end offset from t = 1")->check(CLI::PositiveNumber);
    app.add_option("--t-points", cfg.t_points, "Rows in boundary tables")->check(CLI::PositiveNumber);
    app.add_option("--lattice-t-steps", cfg.lattice_t_steps, "Lattice time steps");
    app.add_option("--lattice-q-steps", cfg.lattice_q_steps, "Lattice state steps");
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out_path, "Output file (default: standard output)");
    app.add_option("--config", config_file, "Reserved; not supported");
    app.add_flag("--no-timing", no_timing, "Omit wall-clock timing for byte-stable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    if (!config_file.empty()) {
        err << "--config is reserved and not supported in this version\n";
        return 2;
    }
    cfg.command = command_from_string(command);
    cfg.out_format = format == "csv" ? OutFormat::csv : OutFormat::json;
    if (!out_path.empty()) cfg.out_path = out_path;
    cfg.timing = !no_timing;

    auto write = [&](const std::string& text) {
        if (cfg.out_path) {
            std::ofstream f(*cfg.out_path, std::ios::binary);
            if (!f) {
                err << "cannot open " << *cfg.out_path << '\n';
                return false;
            }
            f << text;
        } else {
            out << text;
        }
        return true;
    };
    auto error_payload = [&](std::string_view kind, const std::string& message) {
        json e = {{"tool_version", std::string(kToolVersion)},
                  {"config", to_json(cfg)},
                  {"error", {{"kind", std::string(kind)}, {"message", message}}}};
        return e.dump(2) + "\n";
    };

    try {
        const auto env = run(cfg);
        const std::string text =
            cfg.out_format == OutFormat::json ? to_json(env).dump(2) + "\n" : env.csv;
        if (!write(text)) return 1;
        return env.ok ? 0 : 1;
    } catch (const NumericError& e) {
        write(error_payload("numeric", e.what()));
        return 1;
    } catch (const std::invalid_argument& e) {
        err << error_payload("usage", e.what());
        return 2;
    } catch (const std::exception& e) {
        write(error_payload("numeric", e.what()));
        return 1;
    }
}

}  // namespace besselstop
