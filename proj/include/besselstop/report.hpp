#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

namespace besselstop {

/// One named numeric check. `margin` is the measured violation or deviation
/// (<= 0 means strictly inside for one-sided checks); the check passes when
/// margin <= tolerance.
struct Check {
    std::string name;
    bool pass = false;
    double margin = 0.0;
    double tolerance = 0.0;
};

class VerificationReport {
public:
    /// |actual - expected| / max(1, |expected|) <= rel_tol.
    void expect_close(std::string name, double actual, double expected, double rel_tol);
    /// lhs <= rhs up to rel_tol * max(1, |lhs|, |rhs|).
    void expect_le(std::string name, long double lhs, long double rhs, double rel_tol = 1e-12);
    /// Strict lhs < rhs.
    void expect_lt(std::string name, long double lhs, long double rhs);
    /// margin <= tolerance.
    void expect_margin(std::string name, double margin, double tolerance);

    void merge(const VerificationReport& other, const std::string& prefix = {});

    const std::vector<Check>& checks() const noexcept { return checks_; }
    std::size_t passed() const noexcept;
    std::size_t total() const noexcept { return checks_.size(); }
    bool all_passed() const noexcept { return passed() == total(); }
    /// First failing check, or nullptr.
    const Check* first_failure() const noexcept;
    /// Largest margin/tolerance ratio among checks of a given name prefix.
    double worst_margin(const std::string& prefix = {}) const;

private:
    std::vector<Check> checks_;
};

nlohmann::json to_json(const VerificationReport& report);

}  // namespace besselstop
