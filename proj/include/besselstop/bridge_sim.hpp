#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "besselstop/series.hpp"

namespace besselstop {

enum class Scheme { exact_integer_dim, euler_full_truncation };

std::string_view to_string(Scheme scheme);
Scheme scheme_from_string(std::string_view name);

struct SimConfig {
    ModelParams params{3.0, 1.0};
    double t0 = 0.0;
    double q0 = 0.0;
    std::size_t n_paths = 200000;
    std::size_t n_steps = 2000;
    std::uint64_t seed = 20240601;
    Scheme scheme = Scheme::exact_integer_dim;
    double eps_end = 1e-6;

    /// Throws std::invalid_argument / SchemeError on inconsistent settings.
    void validate() const;
};

struct BridgePath {
    std::vector<double> times;
    std::vector<double> q;
    std::uint64_t seed_used = 0;
};

/// Stop at the first grid time s < 1 with Q_s >= Z (1 - s).
struct ThresholdPolicy {
    double Z;
    explicit ThresholdPolicy(double z);
};

struct StoppingOutcome {
    double tau = 1.0;
    double payoff = 0.0;
    bool stopped = false;
};

struct MCResult {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n_paths = 0;
    std::pair<double, double> ci95{0.0, 0.0};
    double stop_fraction = 0.0;
    /// Set when fewer than 100 paths were used.
    bool low_path_count = false;
};

struct SweepRow {
    double multiplier;
    double Z_level;
    MCResult result;
    /// Paired (CRN) difference: payoff(m = 1) - payoff(m), mean and stderr.
    /// Zero for the m = 1 row itself; NaN when 1 is not among the multipliers.
    double paired_diff_mean;
    double paired_diff_stderr;
};

/// Seed for path `index`, derived from the master seed by a counter-based mix.
std::uint64_t path_seed(std::uint64_t master, std::uint64_t index);

/// Sum of alpha independent squared Brownian bridges on the uniform grid
/// t_i = i / n_steps (requires integer alpha, t0 = 0, q0 = 0).
BridgePath simulate_exact(const SimConfig& config, std::uint64_t path_index = 0);

/// Full-truncation Euler on the uniform grid [t0, 1 - eps_end].
BridgePath simulate_euler(const SimConfig& config, std::uint64_t path_index = 0);

BridgePath simulate(const SimConfig& config, std::uint64_t path_index = 0);

StoppingOutcome apply_policy(const BridgePath& path, const ThresholdPolicy& policy, double n);

MCResult mc_estimate(const SimConfig& config, const ThresholdPolicy& policy);

/// Thresholds m * Z evaluated on one shared path ensemble.
std::vector<SweepRow> policy_sweep(const SimConfig& config, double Z,
                                   const std::vector<double>& multipliers);

/// Pairwise (cascade) summation; result is independent of thread layout.
double pairwise_sum(const double* data, std::size_t count);

}  // namespace besselstop
