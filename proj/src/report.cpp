#include "besselstop/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace besselstop {

void VerificationReport::expect_close(std::string name, double actual, double expected,
                                      double rel_tol) {
    const double dev = std::abs(actual - expected) / std::max(1.0, std::abs(expected));
    const bool ok = std::isfinite(dev) && dev <= rel_tol;
    checks_.push_back({std::move(name), ok, std::isfinite(dev) ? dev : 1e308, rel_tol});
}

void VerificationReport::expect_le(std::string name, long double lhs, long double rhs,
                                   double rel_tol) {
    const long double scale = std::max({1.0L, std::fabs(lhs), std::fabs(rhs)});
    const double margin = static_cast<double>((lhs - rhs) / scale);
    checks_.push_back({std::move(name), margin <= rel_tol, margin, rel_tol});
}

void VerificationReport::expect_lt(std::string name, long double lhs, long double rhs) {
    const long double scale = std::max({1.0L, std::fabs(lhs), std::fabs(rhs)});
    const double margin = static_cast<double>((lhs - rhs) / scale);
    checks_.push_back({std::move(name), lhs < rhs, margin, 0.0});
}

void VerificationReport::expect_margin(std::string name, double margin, double tolerance) {
    const bool ok = std::isfinite(margin) && margin <= tolerance;
    checks_.push_back({std::move(name), ok, margin, tolerance});
}

void VerificationReport::merge(const VerificationReport& other, const std::string& prefix) {
    for (auto c : other.checks_) {
        c.name = prefix + c.name;
        checks_.push_back(std::move(c));
    }
}

std::size_t VerificationReport::passed() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; }));
}

const Check* VerificationReport::first_failure() const noexcept {
    for (const auto& c : checks_)
        if (!c.pass) return &c;
    return nullptr;
}

double VerificationReport::worst_margin(const std::string& prefix) const {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& c : checks_) {
        if (c.name.compare(0, prefix.size(), prefix) != 0) continue;
        worst = std::max(worst, c.margin);
    }
    return worst;
}

nlohmann::json to_json(const VerificationReport& report) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : report.checks())
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"margin", c.margin},
                          {"tolerance", c.tolerance}});
    return {{"checks", checks},
            {"summary", {{"passed", report.passed()}, {"total", report.total()}}}};
}

}  // namespace besselstop
