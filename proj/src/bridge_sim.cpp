#include "besselstop/bridge_sim.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "besselstop/parallel.hpp"

namespace besselstop {

std::string_view to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::exact_integer_dim: return "exact";
        case Scheme::euler_full_truncation: return "euler";
    }
    return "unknown";
}

Scheme scheme_from_string(std::string_view name) {
    if (name == "exact" || name == "exact_integer_dim") return Scheme::exact_integer_dim;
    if (name == "euler" || name == "euler_full_truncation") return Scheme::euler_full_truncation;
    throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

namespace {

bool is_positive_integer(double a) { return a >= 1.0 && std::floor(a) == a && a < 1e6; }

}  // namespace

void SimConfig::validate() const {
    if (!(t0 >= 0.0) || !(t0 < 1.0)) throw std::invalid_argument("SimConfig: t0 must lie in [0, 1)");
    if (!(q0 >= 0.0)) throw std::invalid_argument("SimConfig: q0 must be >= 0");
    if (n_paths == 0) throw std::invalid_argument("SimConfig: n_paths must be positive");
    if (n_steps == 0) throw std::invalid_argument("SimConfig: n_steps must be positive");
    if (scheme == Scheme::exact_integer_dim) {
        if (!is_positive_integer(params.alpha()))
            throw SchemeError("exact scheme requires a positive integer alpha");
        if (t0 != 0.0 || q0 != 0.0)
            throw SchemeError("exact scheme starts from (t0, q0) = (0, 0); use euler otherwise");
    } else if (!(eps_end > 0.0) || !(eps_end < 1.0 - t0)) {
        throw std::invalid_argument("SimConfig: eps_end must lie in (0, 1 - t0)");
    }
}

ThresholdPolicy::ThresholdPolicy(double z) : Z(z) {
    if (!(z > 0.0)) throw std::invalid_argument("ThresholdPolicy: Z must be > 0");
}

std::uint64_t path_seed(std::uint64_t master, std::uint64_t index) {
    // splitmix64 finalizer over a Weyl-sequence counter
    std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

void fill_exact(const SimConfig& cfg, std::uint64_t index, BridgePath& path,
                std::vector<double>& bridges) {
    const std::size_t N = cfg.n_steps;
    const std::size_t dims = static_cast<std::size_t>(cfg.params.alpha());
    path.seed_used = path_seed(cfg.seed, index);
    std::mt19937_64 gen(path.seed_used);
    std::normal_distribution<double> normal;

    path.times.resize(N + 1);
    path.q.resize(N + 1);
    bridges.assign(dims, 0.0);
    const double h = 1.0 / static_cast<double>(N);
    path.times[0] = 0.0;
    path.q[0] = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double t = h * static_cast<double>(i);
        const double s = 1.0 - t;
        double q = 0.0;
        if (i + 1 == N) {
            for (auto& b : bridges) b = 0.0;
        } else {
            const double shrink = 1.0 - h / s;
            const double sd = std::sqrt(h * (s - h) / s);
            for (auto& b : bridges) {
                b = b * shrink + sd * normal(gen);
                q += b * b;
            }
        }
        path.times[i + 1] = i + 1 == N ? 1.0 : h * static_cast<double>(i + 1);
        path.q[i + 1] = q;
    }
}

void fill_euler(const SimConfig& cfg, std::uint64_t index, BridgePath& path) {
    const std::size_t N = cfg.n_steps;
    path.seed_used = path_seed(cfg.seed, index);
    std::mt19937_64 gen(path.seed_used);
    std::normal_distribution<double> normal;

    path.times.resize(N + 1);
    path.q.resize(N + 1);
    const double t_end = 1.0 - cfg.eps_end;
    const double h = (t_end - cfg.t0) / static_cast<double>(N);
    const double sqrt_h = std::sqrt(h);
    const double alpha = cfg.params.alpha();
    double q = cfg.q0;
    path.times[0] = cfg.t0;
    path.q[0] = q;
    for (std::size_t i = 0; i < N; ++i) {
        const double t = cfg.t0 + h * static_cast<double>(i);
        const double drift = alpha - 2.0 * q / (1.0 - t);
        q = std::max(0.0, q + drift * h + 2.0 * std::sqrt(std::max(q, 0.0)) * sqrt_h * normal(gen));
        path.times[i + 1] = i + 1 == N ? t_end : cfg.t0 + h * static_cast<double>(i + 1);
        path.q[i + 1] = q;
    }
}

struct Ensemble {
    // payoff[k * n_paths + p] for threshold k
    std::vector<double> payoff;
    std::vector<char> stopped;
};

Ensemble run_ensemble(const SimConfig& cfg, const std::vector<double>& thresholds) {
    cfg.validate();
    const std::size_t P = cfg.n_paths;
    const std::size_t K = thresholds.size();
    const double half_n = 0.5 * cfg.params.n();
    Ensemble ens;
    ens.payoff.assign(K * P, 0.0);
    ens.stopped.assign(K * P, 0);

    parallel_for(P, [&](std::size_t begin, std::size_t end) {
        BridgePath path;
        std::vector<double> bridges;
        std::vector<char> done(K);
        for (std::size_t p = begin; p < end; ++p) {
            if (cfg.scheme == Scheme::exact_integer_dim)
                fill_exact(cfg, p, path, bridges);
            else
                fill_euler(cfg, p, path);
            std::fill(done.begin(), done.end(), 0);
            std::size_t remaining = K;
            for (std::size_t i = 0; i < path.q.size() && remaining > 0; ++i) {
                const double s = 1.0 - path.times[i];
                if (!(s > 0.0)) break;
                const double q = path.q[i];
                for (std::size_t k = 0; k < K; ++k) {
                    if (done[k] || q < thresholds[k] * s) continue;
                    done[k] = 1;
                    --remaining;
                    ens.payoff[k * P + p] = q > 0.0 ? std::pow(q, half_n) : 0.0;
                    ens.stopped[k * P + p] = 1;
                }
            }
        }
    });
    return ens;
}

struct Moments {
    double mean;
    double std_error;
};

Moments moments(const double* x, std::size_t count, std::vector<double>& scratch) {
    const double mean = pairwise_sum(x, count) / static_cast<double>(count);
    scratch.resize(count);
    for (std::size_t i = 0; i < count; ++i) scratch[i] = (x[i] - mean) * (x[i] - mean);
    const double var =
        count > 1 ? pairwise_sum(scratch.data(), count) / static_cast<double>(count - 1) : 0.0;
    return {mean, std::sqrt(var / static_cast<double>(count))};
}

MCResult summarize(const double* payoff, const char* stopped, std::size_t count,
                   std::vector<double>& scratch) {
    const auto m = moments(payoff, count, scratch);
    MCResult r;
    r.mean = m.mean;
    r.std_error = m.std_error;
    r.n_paths = count;
    r.ci95 = {m.mean - 1.96 * m.std_error, m.mean + 1.96 * m.std_error};
    std::size_t hits = 0;
    for (std::size_t i = 0; i < count; ++i) hits += stopped[i] ? 1 : 0;
    r.stop_fraction = static_cast<double>(hits) / static_cast<double>(count);
    r.low_path_count = count < 100;
    return r;
}

}  // namespace

double pairwise_sum(const double* data, std::size_t count) {
    if (count <= 16) {
        double s = 0.0;
        for (std::size_t i = 0; i < count; ++i) s += data[i];
        return s;
    }
    const std::size_t half = count / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, count - half);
}

BridgePath simulate_exact(const SimConfig& config, std::uint64_t path_index) {
    if (config.scheme != Scheme::exact_integer_dim) {
        SimConfig copy = config;
        copy.scheme = Scheme::exact_integer_dim;
        copy.validate();
    } else {
        config.validate();
    }
    BridgePath path;
    std::vector<double> bridges;
    fill_exact(config, path_index, path, bridges);
    return path;
}

BridgePath simulate_euler(const SimConfig& config, std::uint64_t path_index) {
    SimConfig copy = config;
    copy.scheme = Scheme::euler_full_truncation;
    copy.validate();
    BridgePath path;
    fill_euler(copy, path_index, path);
    return path;
}

BridgePath simulate(const SimConfig& config, std::uint64_t path_index) {
    return config.scheme == Scheme::exact_integer_dim ? simulate_exact(config, path_index)
                                                      : simulate_euler(config, path_index);
}

StoppingOutcome apply_policy(const BridgePath& path, const ThresholdPolicy& policy, double n) {
    for (std::size_t i = 0; i < path.q.size(); ++i) {
        const double s = 1.0 - path.times[i];
        if (!(s > 0.0)) break;
        const double q = path.q[i];
        if (q >= policy.Z * s)
            return {path.times[i], q > 0.0 ? std::pow(q, 0.5 * n) : 0.0, true};
    }
    return {1.0, 0.0, false};
}

MCResult mc_estimate(const SimConfig& config, const ThresholdPolicy& policy) {
    const auto ens = run_ensemble(config, {policy.Z});
    std::vector<double> scratch;
    return summarize(ens.payoff.data(), ens.stopped.data(), config.n_paths, scratch);
}

std::vector<SweepRow> policy_sweep(const SimConfig& config, double Z,
                                   const std::vector<double>& multipliers) {
    std::vector<double> thresholds;
    thresholds.reserve(multipliers.size());
    for (double m : multipliers) {
        if (!(m > 0.0)) throw std::invalid_argument("policy_sweep: multipliers must be positive");
        thresholds.push_back(m * Z);
    }
    const auto ens = run_ensemble(config, thresholds);
    const std::size_t P = config.n_paths;

    std::ptrdiff_t base = -1;
    for (std::size_t k = 0; k < multipliers.size(); ++k)
        if (multipliers[k] == 1.0) base = static_cast<std::ptrdiff_t>(k);

    std::vector<SweepRow> rows;
    std::vector<double> scratch;
    std::vector<double> diff(P);
    for (std::size_t k = 0; k < multipliers.size(); ++k) {
        SweepRow row{multipliers[k], thresholds[k],
                     summarize(ens.payoff.data() + k * P, ens.stopped.data() + k * P, P, scratch),
                     std::numeric_limits<double>::quiet_NaN(),
                     std::numeric_limits<double>::quiet_NaN()};
        if (base >= 0) {
            const double* ref = ens.payoff.data() + static_cast<std::size_t>(base) * P;
            const double* cur = ens.payoff.data() + k * P;
            for (std::size_t p = 0; p < P; ++p) diff[p] = ref[p] - cur[p];
            const auto m = moments(diff.data(), P, scratch);
            row.paired_diff_mean = m.mean;
            row.paired_diff_stderr = m.std_error;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace besselstop
