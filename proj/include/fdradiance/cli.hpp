#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fdradiance/errors.hpp"
#include "fdradiance/mirror.hpp"
#include "fdradiance/trajectory.hpp"

namespace fdradiance::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitAcceptanceFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// Invalid command-line configuration (maps to exit code 2).
class UsageError : public Error {
public:
    using Error::Error;
};

/// Closed range sampled at `steps` evenly spaced points. steps == 1 yields
/// just `min`; steps >= 2 needs min < max.
struct GridSpec {
    double min;
    double max;
    int steps;
};

/// Throws UsageError for an empty grid or non-ascending bounds.
[[nodiscard]] std::vector<double> expand_grid(const GridSpec& grid, const std::string& name);

struct RunConfig {
    std::string command;
    double kappa = 1.0;
    double zeta = 0.0;
    double e_squared = kDefaultESquared;
    double tol = 1e-8;
    std::optional<GridSpec> z_grid;
    std::optional<GridSpec> t_grid;
    std::optional<GridSpec> omega_grid;
    std::optional<GridSpec> theta_grid;
    std::optional<GridSpec> zeta_grid;
    std::optional<GridSpec> pq_grid;
    std::vector<ModePair> modes;
    std::string method;
    std::string kind = "energy";
    bool penrose = false;
    bool total = false;
    bool duality = false;
    bool limit = false;
    std::string format = "csv";
    std::string output;
    std::size_t threads = 0;
    bool json_report = false;
    std::vector<int> criteria;
    std::optional<double> override_tol;
};

using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Output of one command: echoed configuration, data rows and scalar summary.
struct Report {
    nlohmann::json config;
    Table table;
    nlohmann::json summary = nlohmann::json::object();
};

/// 17 significant digits.
[[nodiscard]] std::string format_number(double value);

/// Header line, data rows, then one "# key,value" line per summary entry.
void write_csv(const Report& report, std::ostream& out);

/// {"config": ..., "rows": [...], "summary": ...} with lexicographic keys.
void write_json(const Report& report, std::ostream& out);

[[nodiscard]] Report run_trajectory(const RunConfig& config, std::ostream& warnings);
[[nodiscard]] Report run_energy(const RunConfig& config, std::ostream& warnings);
[[nodiscard]] Report run_distribution(const RunConfig& config, std::ostream& warnings);
[[nodiscard]] Report run_spectrum(const RunConfig& config, std::ostream& warnings);
[[nodiscard]] Report run_mirror(const RunConfig& config, std::ostream& warnings);

/// Parses argv and runs the selected command. Returns the process exit code:
/// 0 success, 1 acceptance failure, 2 usage or validation error, 3 numerical
/// failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fdradiance::cli
