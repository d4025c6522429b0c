#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace fdradiance {

/// One measured quantity of a criterion, compared as measured <= tolerance.
struct AcceptanceCheck {
    std::string label;
    double measured;
    double tolerance;
    [[nodiscard]] bool passed() const noexcept { return measured <= tolerance; }
};

struct CriterionResult {
    int id;
    std::string name;
    std::vector<AcceptanceCheck> checks;
    double seconds;
    double time_limit;
    /// Set when the computation itself threw.
    std::optional<std::string> error;

    [[nodiscard]] bool passed() const noexcept;
};

struct AcceptanceOptions {
    /// Replaces every criterion tolerance (falsifiability runs).
    std::optional<double> override_tolerance;
    /// Criteria to run; empty means all.
    std::vector<int> only;
};

inline constexpr int kCriterionCount = 10;

/// Runs the acceptance criteria in ascending id order.
[[nodiscard]] std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// "PASS C4 <name>: <label> <measured> <= <tol>; ... (<seconds> s <= <limit> s)".
[[nodiscard]] std::string format_criterion(const CriterionResult& result);

}  // namespace fdradiance
