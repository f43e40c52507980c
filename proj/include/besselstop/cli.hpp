#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "besselstop/bridge_sim.hpp"
#include "besselstop/value_function.hpp"

namespace besselstop {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum class Command {
    boundary,
    coeffs,
    value,
    simulate,
    sweep,
    dp_oracle,
    ode_oracle,
    verify_appendix,
    verify_lemmas,
    acceptance
};

enum class OutFormat { json, csv };

std::string_view to_string(Command command);
Command command_from_string(std::string_view name);

/// Every field has a default; the parsed config is echoed into every output.
struct RunConfig {
    Command command = Command::boundary;
    double alpha = 3.0;
    double n = 1.0;
    double t0 = 0.0;
    double q0 = 0.0;
    double tol = 1e-10;
    std::size_t paths = 200000;
    std::size_t steps = 2000;
    std::uint64_t seed = 20240601;
    std::vector<double> multipliers{0.5, 0.75, 1.0, 1.5, 2.0};
    OutFormat out_format = OutFormat::json;
    std::optional<std::string> out_path;
    /// "auto" picks exact for integer alpha started at (0, 0), euler otherwise.
    std::string scheme = "auto";
    double eps_end = 1e-6;
    std::size_t t_points = 11;
    std::size_t lattice_t_steps = 4000;
    std::size_t lattice_q_steps = 800;
    bool timing = true;
};

nlohmann::json to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

struct ResultEnvelope {
    std::string tool_version{kToolVersion};
    nlohmann::json config;
    nlohmann::json results;
    /// Wall-clock seconds; absent (null) when timing is disabled.
    std::optional<double> timing;
    /// Tabular form of `results` for CSV output.
    std::string csv;
    /// False when the command ran but its own pass/fail verdict is negative.
    bool ok = true;
};

nlohmann::json to_json(const ResultEnvelope& envelope);

/// Dispatches to the module behind config.command. Throws std::invalid_argument
/// for inconsistent settings and NumericError for numeric failures.
ResultEnvelope run(const RunConfig& config);

/// Header `t,z_q,x_boundary,value_at_zero`; t equally spaced on [0, 1], t = 1 included.
std::string emit_boundary_curve(const CandidateSolution& sol, std::size_t t_points);

/// One row per multiplier; the m = 1 row carries candidate=true.
std::string emit_sweep_table(const std::vector<SweepRow>& rows);

/// Full command-line entry point. Exit 0 on success, 2 on usage errors,
/// 1 on numeric failure (error envelope written to `out`).
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace besselstop
