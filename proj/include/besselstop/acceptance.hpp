#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace besselstop {

struct AcceptanceRow {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
    double limit_seconds = 0.0;
};

struct AcceptanceOptions {
    std::size_t paths = 200000;
    std::size_t steps = 2000;
    std::uint64_t seed = 20240601;
    /// Criteria to run (1..10); empty means all.
    std::vector<int> only;
    /// Called after each criterion finishes.
    std::function<void(const AcceptanceRow&)> on_row;
};

/// A row passes only if its numeric check holds and it finished within its limit.
AcceptanceRow run_criterion(int id, const AcceptanceOptions& options = {});
std::vector<AcceptanceRow> run_acceptance(const AcceptanceOptions& options = {});

}  // namespace besselstop
