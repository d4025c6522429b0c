#include "fdradiance/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "fdradiance/acceptance.hpp"
#include "fdradiance/parallel.hpp"
#include "fdradiance/spectra.hpp"

namespace fdradiance::cli {
namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;
const double kClosedFormRatio = (1.0 / 36.0) * (1.0 / (3.0 * std::sqrt(3.0)) - 1.0 / (4.0 * kPi));

json grid_json(const GridSpec& g) { return {{"min", g.min}, {"max", g.max}, {"steps", g.steps}}; }

json base_config(const RunConfig& c) {
    json j = {{"command", c.command}, {"kappa", c.kappa}, {"zeta", c.zeta},
              {"e_squared", c.e_squared}, {"tol", c.tol}};
    return j;
}

void validate_common(const RunConfig& c) {
    if (!(c.tol > 0.0 && c.tol <= 1e-2)) throw UsageError("--tol must lie in (0, 1e-2]");
    if (c.format != "csv" && c.format != "json") throw UsageError("--format must be csv or json");
}

double rel_diff(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

// Runs `count` independent row builders in parallel and concatenates their
// rows in index order.
void fill_rows(Table& table, std::size_t count, std::size_t threads,
               const std::function<std::vector<std::vector<Cell>>(std::size_t)>& build) {
    std::vector<std::vector<std::vector<Cell>>> slots(count);
    parallel_for(count, threads, [&](std::size_t i) { slots[i] = build(i); });
    for (auto& slot : slots) {
        for (auto& row : slot) table.rows.push_back(std::move(row));
    }
}

}  // namespace

std::vector<double> expand_grid(const GridSpec& grid, const std::string& name) {
    if (grid.steps < 1) throw UsageError(name + " grid is empty (steps must be >= 1)");
    if (!std::isfinite(grid.min) || !std::isfinite(grid.max)) {
        throw UsageError(name + " grid bounds must be finite");
    }
    if (grid.steps == 1) return {grid.min};
    if (!(grid.min < grid.max)) throw UsageError(name + " grid needs min < max");
    std::vector<double> values(static_cast<std::size_t>(grid.steps));
    const int last = grid.steps - 1;
    for (int i = 0; i <= last; ++i) {
        values[static_cast<std::size_t>(i)] = ((last - i) * grid.min + i * grid.max) / last;
    }
    return values;
}

std::string format_number(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

void write_csv(const Report& report, std::ostream& out) {
    const auto& columns = report.table.columns;
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& row : report.table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            if (const double* d = std::get_if<double>(&row[i])) {
                out << format_number(*d);
            } else {
                out << std::get<std::string>(row[i]);
            }
        }
        out << '\n';
    }
    for (const auto& [key, value] : report.summary.items()) {
        out << "# " << key << ',';
        if (value.is_number_float()) {
            out << format_number(value.get<double>());
        } else if (value.is_string()) {
            out << value.get<std::string>();
        } else {
            out << value.dump();
        }
        out << '\n';
    }
}

void write_json(const Report& report, std::ostream& out) {
    json rows = json::array();
    for (const auto& row : report.table.rows) {
        json object = json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const std::string& key = report.table.columns[i];
            if (const double* d = std::get_if<double>(&row[i])) {
                object[key] = *d;
            } else {
                object[key] = std::get<std::string>(row[i]);
            }
        }
        rows.push_back(std::move(object));
    }
    const json document = {{"config", report.config}, {"rows", rows}, {"summary", report.summary}};
    out << document.dump(2) << '\n';
}

Report run_trajectory(const RunConfig& config, std::ostream&) {
    validate_common(config);
    const std::vector<double> zetas =
        config.zeta_grid ? expand_grid(*config.zeta_grid, "zeta") : std::vector<double>{config.zeta};
    std::vector<TrajectoryParams> params;
    for (double zeta : zetas) params.emplace_back(config.kappa, zeta, config.e_squared);

    Report report;
    report.config = base_config(config);
    report.config["penrose"] = config.penrose;
    if (config.zeta_grid) report.config["zeta_grid"] = grid_json(*config.zeta_grid);
    report.table.columns = {"zeta", "t", "z", "kappa_z"};
    if (config.penrose) {
        report.table.columns.emplace_back("U");
        report.table.columns.emplace_back("V");
    }

    const auto row = [&](const TrajectoryParams& p, double t, double z) {
        std::vector<Cell> r = {p.zeta(), t, z, p.kappa() * z};
        if (config.penrose) {
            const PenrosePoint pp = penrose_coordinates(p, z);
            r.emplace_back(pp.u);
            r.emplace_back(pp.v);
        }
        return r;
    };

    if (config.z_grid) {
        if (config.t_grid) throw UsageError("give either a z grid or a t grid, not both");
        const std::vector<double> zs = expand_grid(*config.z_grid, "z");
        report.config["z_grid"] = grid_json(*config.z_grid);
        fill_rows(report.table, params.size(), config.threads, [&](std::size_t i) {
            std::vector<std::vector<Cell>> rows;
            for (double z : zs) rows.push_back(row(params[i], coordinate_time(params[i], z), z));
            return rows;
        });
    } else {
        const GridSpec tg = config.t_grid.value_or(GridSpec{-5.0, 5.0, 101});
        const std::vector<double> ts = expand_grid(tg, "t");
        report.config["t_grid"] = grid_json(tg);
        const std::size_t n = ts.size();
        fill_rows(report.table, params.size() * n, config.threads, [&](std::size_t k) {
            const TrajectoryParams& p = params[k / n];
            const double t = ts[k % n];
            return std::vector<std::vector<Cell>>{row(p, t, position_at_time(p, t))};
        });
    }
    report.summary["rows"] = static_cast<double>(report.table.rows.size());
    return report;
}

Report run_energy(const RunConfig& config, std::ostream& warnings) {
    validate_common(config);
    const std::string method = config.method.empty() ? "larmor" : config.method;
    if (method != "larmor" && method != "spectral" && method != "both") {
        throw UsageError("energy --method must be larmor, spectral or both");
    }
    const bool larmor = method != "spectral";
    const bool spectral = method != "larmor";
    const std::vector<double> zetas =
        config.zeta_grid ? expand_grid(*config.zeta_grid, "zeta") : std::vector<double>{config.zeta};
    std::vector<TrajectoryParams> params;
    for (double zeta : zetas) {
        params.emplace_back(config.kappa, zeta, config.e_squared);
        if (energy_near_divergence(params.back())) {
            warnings << "warning: zeta = " << format_number(zeta)
                     << " is close to -1; the radiated energy diverges as zeta -> -1\n";
        }
    }

    Report report;
    report.config = base_config(config);
    report.config["method"] = method;
    if (config.zeta_grid) report.config["zeta_grid"] = grid_json(*config.zeta_grid);
    report.table.columns = {"zeta", "method", "energy", "energy_over_e2kappa", "abs_error"};
    if (larmor && spectral) report.table.columns.emplace_back("relative_difference");

    std::vector<double> larmor_values(params.size());
    double worst_difference = 0.0;
    std::vector<double> differences(params.size());
    fill_rows(report.table, params.size(), config.threads, [&](std::size_t i) {
        const TrajectoryParams& p = params[i];
        const double scale = p.e_squared() * p.kappa();
        std::vector<std::vector<Cell>> rows;
        std::optional<RealQuadrature> l, s;
        if (larmor) l = total_energy_larmor(p, std::max(config.tol, 1e-12));
        if (spectral) {
            SpectrumOptions options;
            options.tol = config.tol;
            s = total_energy_spectral(p, options);
        }
        const double difference = (l && s) ? rel_diff(s->value, l->value) : 0.0;
        differences[i] = difference;
        if (l) larmor_values[i] = l->value;
        for (const auto& [name, r] : {std::pair{"larmor", l}, std::pair{"spectral", s}}) {
            if (!r) continue;
            std::vector<Cell> row = {p.zeta(), std::string(name), r->value, r->value / scale, r->abs_error};
            if (larmor && spectral) row.emplace_back(difference);
            rows.push_back(std::move(row));
        }
        return rows;
    });
    for (double d : differences) worst_difference = std::max(worst_difference, d);

    report.summary["closed_form_zeta0_over_e2kappa"] = kClosedFormRatio;
    if (larmor && spectral) report.summary["max_relative_difference"] = worst_difference;
    if (larmor && params.size() > 1) {
        bool decreasing = true;
        for (std::size_t i = 1; i < larmor_values.size(); ++i) {
            decreasing = decreasing && larmor_values[i] < larmor_values[i - 1];
        }
        report.summary["strictly_decreasing_in_zeta"] = decreasing;
    }
    return report;
}

Report run_distribution(const RunConfig& config, std::ostream&) {
    validate_common(config);
    const std::string method = config.method.empty() ? "all" : config.method;
    if (method != "numeric" && method != "exact" && method != "fd" && method != "all") {
        throw UsageError("distribution --method must be numeric, exact, fd or all");
    }
    const TrajectoryParams params(config.kappa, config.zeta, config.e_squared);
    if (method == "exact" && params.zeta() != 0.0) {
        throw UsageError("the exact distribution is only available for zeta = 0");
    }
    const bool numeric = method == "numeric" || method == "all";
    const bool exact = method == "exact" || (method == "all" && params.zeta() == 0.0);
    const bool fd = method == "fd" || method == "all";

    const GridSpec og = config.omega_grid.value_or(GridSpec{0.1 * config.kappa, 5.0 * config.kappa, 50});
    const GridSpec tg = config.theta_grid.value_or(GridSpec{0.0, kPi, 7});
    const std::vector<double> omegas = expand_grid(og, "omega");
    const std::vector<double> thetas = expand_grid(tg, "theta");
    std::vector<EmissionDirection> dirs;
    for (double theta : thetas) dirs.emplace_back(theta);

    Report report;
    report.config = base_config(config);
    report.config["method"] = method;
    report.config["omega_grid"] = grid_json(og);
    report.config["theta_grid"] = grid_json(tg);
    report.table.columns = {"omega", "omega_over_kappa", "theta", "cos_theta", "method", "value", "abs_error"};

    const auto row = [&](const SpectralSample& s, double cos_theta) {
        return std::vector<Cell>{s.omega, s.omega / params.kappa(), s.theta, cos_theta,
                                 std::string(to_string(s.method)), s.value, s.abs_error};
    };
    fill_rows(report.table, omegas.size(), config.threads, [&](std::size_t i) {
        const double omega = omegas[i];
        std::vector<std::vector<Cell>> rows;
        for (const auto& dir : dirs) {
            if (numeric) rows.push_back(row(distribution_numeric(params, omega, dir, config.tol), dir.cos_theta()));
            if (exact) {
                rows.push_back(row(distribution_exact_zeta0(params.kappa(), params.e_squared(), omega, dir),
                                   dir.cos_theta()));
            }
        }
        // The Fermi-Dirac form exists only in the special direction.
        if (fd) rows.push_back(row(fermi_dirac_distribution(params, omega), params.zeta()));
        return rows;
    });
    report.summary["special_angle_theta"] = std::acos(params.zeta());
    return report;
}

Report run_spectrum(const RunConfig& config, std::ostream&) {
    validate_common(config);
    const std::string kind = config.kind;
    if (kind != "energy" && kind != "particle" && kind != "both") {
        throw UsageError("spectrum --kind must be energy, particle or both");
    }
    const TrajectoryParams params(config.kappa, config.zeta, config.e_squared);
    SpectrumOptions options;
    options.tol = config.tol;
    options.threads = config.threads;
    if (config.method == "numeric") {
        options.method = SpectralMethod::numeric;
    } else if (config.method == "exact") {
        if (params.zeta() != 0.0) throw UsageError("the exact distribution is only available for zeta = 0");
        options.method = SpectralMethod::exact_zeta0;
    } else if (!config.method.empty()) {
        throw UsageError("spectrum --method must be numeric or exact");
    }
    const GridSpec og = config.omega_grid.value_or(GridSpec{0.05 * config.kappa, 10.0 * config.kappa, 100});
    const std::vector<double> omegas = expand_grid(og, "omega");

    Report report;
    report.config = base_config(config);
    report.config["kind"] = kind;
    report.config["method"] = config.method.empty() ? "auto" : config.method;
    report.config["omega_grid"] = grid_json(og);
    report.table.columns = {"omega", "omega_over_kappa", "kind", "value", "abs_error"};

    const SpectralCurve energy = spectrum_curve(params, omegas, CurveKind::energy_spectrum, options);
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        const double w = omegas[i];
        if (kind != "particle") {
            report.table.rows.push_back({w, w / params.kappa(), std::string("energy-spectrum"),
                                         energy.values[i], energy.abs_errors[i]});
        }
        if (kind != "energy") {
            report.table.rows.push_back({w, w / params.kappa(), std::string("particle-spectrum"),
                                         energy.values[i] / w, energy.abs_errors[i] / w});
        }
    }
    if (config.total) {
        const RealQuadrature spectral = total_energy_spectral(params, options);
        const RealQuadrature larmor = total_energy_larmor(params);
        report.summary["total_energy_spectral"] = spectral.value;
        report.summary["total_energy_larmor"] = larmor.value;
        report.summary["relative_difference"] = rel_diff(spectral.value, larmor.value);
    }
    return report;
}

Report run_mirror(const RunConfig& config, std::ostream&) {
    validate_common(config);
    const double zeta = config.zeta;
    if (!(zeta >= -1.0 && zeta <= 1.0)) throw UsageError("mirror --zeta must lie in [-1, 1]");
    if (!(config.kappa > 0.0)) throw UsageError("--kappa must be positive");

    Report report;
    report.config = base_config(config);
    report.table.columns = {"p", "q", "p_plus_q", "p_plus_q_over_kappa", "beta_squared", "source"};
    const auto row = [&](const BetaCoefficient& b, const char* source) {
        const double u = b.modes.p + b.modes.q;
        return std::vector<Cell>{b.modes.p, b.modes.q, u, u / config.kappa, b.beta_squared, std::string(source)};
    };

    for (const ModePair& m : config.modes) {
        report.table.rows.push_back(row(beta_squared_fd(m, config.kappa, zeta), "fermi-dirac"));
    }
    if (config.omega_grid || config.theta_grid) {
        const TrajectoryParams params(config.kappa, zeta, config.e_squared);
        const GridSpec og = config.omega_grid.value_or(GridSpec{0.1 * config.kappa, 5.0 * config.kappa, 50});
        const GridSpec tg = config.theta_grid.value_or(GridSpec{0.0, kPi, 7});
        report.config["omega_grid"] = grid_json(og);
        report.config["theta_grid"] = grid_json(tg);
        const std::vector<double> omegas = expand_grid(og, "omega");
        const std::vector<double> thetas = expand_grid(tg, "theta");
        fill_rows(report.table, omegas.size() * thetas.size(), config.threads, [&](std::size_t k) {
            const SpectralSample s = distribution_numeric(params, omegas[k / thetas.size()],
                                                          EmissionDirection(thetas[k % thetas.size()]), config.tol);
            return std::vector<std::vector<Cell>>{
                row(beta_squared_from_distribution(s, params.e_squared()), "distribution-numeric")};
        });
    }
    if (config.modes.empty() && !config.omega_grid && !config.theta_grid) {
        const GridSpec pg = config.pq_grid.value_or(GridSpec{0.1 * config.kappa, 5.0 * config.kappa, 50});
        report.config["pq_grid"] = grid_json(pg);
        for (double u : expand_grid(pg, "p+q")) {
            if (!(u > 0.0)) throw UsageError("p+q grid must be positive");
            const BetaCoefficient b = beta_squared_fd(special_angle_modes(u, zeta), config.kappa, zeta);
            report.table.rows.push_back(row(b, "fermi-dirac"));
            if (config.limit) {
                const BetaCoefficient lead = beta_squared_fd_limit(b.modes.q, config.kappa, zeta);
                report.table.rows.push_back(row(lead, "leading-order"));
            }
        }
    }

    report.summary["mirror_fd_energy"] = mirror_fd_energy(config.kappa, zeta);
    report.summary["mirror_fd_energy_numeric"] = mirror_fd_energy_numeric(config.kappa, zeta).value;
    report.summary["mirror_particle_count"] = mirror_particle_count(zeta);
    report.summary["mirror_particle_count_numeric"] = mirror_particle_count_numeric(config.kappa, zeta).value;
    if (config.duality) {
        const double electron = fd_particle_count(zeta, config.e_squared);
        const double electron_numeric =
            fd_particle_count_numeric(TrajectoryParams(config.kappa, zeta, config.e_squared)).value;
        report.summary["electron_fd_particle_count"] = electron_numeric;
        report.summary["electron_fd_particle_count_closed_form"] = electron;
        report.summary["duality_relative_difference"] =
            rel_diff(electron_numeric / config.e_squared, mirror_particle_count(zeta));
    }
    return report;
}

namespace {

struct GridOptions {
    double min = std::numeric_limits<double>::quiet_NaN();
    double max = std::numeric_limits<double>::quiet_NaN();
    int steps = -1;
    // One triple per subcommand that offers this grid.
    std::vector<CLI::Option*> min_opts, max_opts, steps_opts;

    void bind(CLI::App* app, const std::string& name, const std::string& what) {
        min_opts.push_back(app->add_option("--" + name + "-min", min, "Lower bound of the " + what + " grid"));
        max_opts.push_back(app->add_option("--" + name + "-max", max, "Upper bound of the " + what + " grid"));
        steps_opts.push_back(app->add_option("--" + name + "-steps", steps, "Number of " + what + " samples"));
    }

    static bool given(const std::vector<CLI::Option*>& opts) {
        return std::any_of(opts.begin(), opts.end(), [](const CLI::Option* o) { return o->count() > 0; });
    }

    // Unset when no flag of this grid was given; missing pieces come from
    // `fallback`. A lone --X-min selects the single value min.
    [[nodiscard]] std::optional<GridSpec> resolve(const GridSpec& fallback) const {
        const bool has_min = given(min_opts), has_max = given(max_opts), has_steps = given(steps_opts);
        if (!has_min && !has_max && !has_steps) return std::nullopt;
        GridSpec g = fallback;
        if (has_min) g.min = min;
        if (has_max) g.max = max;
        if (has_steps) g.steps = steps;
        if (has_min && !has_max && !has_steps) g = {min, min, 1};
        return g;
    }
};

struct Parsed {
    RunConfig config;
    GridOptions z, t, omega, theta, zeta, pq;
    std::vector<std::string> mode_strings;
};

void add_common(CLI::App* app, Parsed& p) {
    RunConfig& c = p.config;
    app->add_option("--kappa", c.kappa, "Acceleration scale kappa > 0")->capture_default_str();
    app->add_option("--zeta", c.zeta, "Trajectory shape parameter zeta")->capture_default_str();
    app->add_option("--e-squared", c.e_squared, "Squared charge e^2 (default 4 pi alpha)")->capture_default_str();
    app->add_option("--tol", c.tol, "Relative tolerance, in (0, 1e-2]")->capture_default_str();
    app->add_option("--format", c.format, "Output format: csv or json")->capture_default_str();
    app->add_option("--output", c.output, "Write to PATH instead of standard output");
    app->add_option("--threads", c.threads, "Worker threads (0 = all cores)")->capture_default_str();
}

ModePair parse_mode(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw UsageError("--mode expects P,Q, got '" + text + "'");
    try {
        std::size_t used_p = 0, used_q = 0;
        const std::string ps = text.substr(0, comma), qs = text.substr(comma + 1);
        const double p = std::stod(ps, &used_p);
        const double q = std::stod(qs, &used_q);
        if (used_p != ps.size() || used_q != qs.size()) throw std::invalid_argument(text);
        return {p, q};
    } catch (const std::logic_error&) {
        throw UsageError("--mode expects two numbers P,Q, got '" + text + "'");
    }
}

void emit(const Report& report, const RunConfig& config, std::ostream& out) {
    std::ofstream file;
    std::ostream* target = &out;
    if (!config.output.empty()) {
        file.open(config.output, std::ios::binary);
        if (!file) throw UsageError("cannot open output file " + config.output);
        target = &file;
    }
    if (config.format == "json") {
        write_json(report, *target);
    } else {
        write_csv(report, *target);
    }
}

int run_check(const RunConfig& config, std::ostream& out) {
    AcceptanceOptions options;
    options.override_tolerance = config.override_tol;
    options.only = config.criteria;
    for (int id : options.only) {
        if (id < 1 || id > kCriterionCount) throw UsageError("--criterion must lie in 1.." + std::to_string(kCriterionCount));
    }
    const std::vector<CriterionResult> results = run_acceptance(options);
    const auto passed = static_cast<std::size_t>(
        std::count_if(results.begin(), results.end(), [](const CriterionResult& r) { return r.passed(); }));
    if (config.json_report) {
        json rows = json::array();
        for (const auto& r : results) {
            json checks = json::array();
            for (const auto& c : r.checks) {
                checks.push_back({{"label", c.label}, {"measured", c.measured}, {"tolerance", c.tolerance},
                                  {"passed", c.passed()}});
            }
            json row = {{"id", r.id}, {"name", r.name}, {"passed", r.passed()}, {"checks", checks},
                        {"seconds", r.seconds}, {"time_limit", r.time_limit}};
            if (r.error) row["error"] = *r.error;
            rows.push_back(std::move(row));
        }
        json cfg = {{"command", "check"}};
        if (config.override_tol) cfg["override_tol"] = *config.override_tol;
        if (!config.criteria.empty()) cfg["criteria"] = config.criteria;
        const json document = {{"config", cfg}, {"rows", rows},
                               {"summary", {{"passed", passed}, {"total", results.size()}}}};
        out << document.dump(2) << '\n';
    } else {
        for (const auto& r : results) out << format_criterion(r) << '\n';
        out << passed << "/" << results.size() << " criteria passed\n";
    }
    return passed == results.size() ? kExitSuccess : kExitAcceptanceFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Radiation from a point charge on the Fermi-Dirac trajectory", "fdradiance"};
    app.require_subcommand(1);
    Parsed p;
    RunConfig& c = p.config;

    auto* trajectory = app.add_subcommand("trajectory", "Worldline samples z(t), optionally with Penrose coordinates");
    add_common(trajectory, p);
    p.t.bind(trajectory, "t", "time");
    p.z.bind(trajectory, "z", "position");
    p.zeta.bind(trajectory, "zeta", "zeta");
    trajectory->add_flag("--penrose", c.penrose, "Add compactified null coordinates U, V");

    auto* energy = app.add_subcommand("energy", "Total radiated energy");
    add_common(energy, p);
    p.zeta.bind(energy, "zeta", "zeta");
    energy->add_option("--method", c.method, "larmor, spectral or both");

    auto* distribution = app.add_subcommand("distribution", "Spectral distribution dI/dOmega");
    add_common(distribution, p);
    p.omega.bind(distribution, "omega", "frequency");
    p.theta.bind(distribution, "theta", "polar angle");
    distribution->add_option("--method", c.method, "numeric, exact, fd or all");

    auto* spectrum = app.add_subcommand("spectrum", "Energy spectrum I(omega) and particle spectrum N(omega)");
    add_common(spectrum, p);
    p.omega.bind(spectrum, "omega", "frequency");
    spectrum->add_option("--kind", c.kind, "energy, particle or both")->capture_default_str();
    spectrum->add_option("--method", c.method, "Angular integrand: numeric or exact (default: exact when zeta = 0)");
    spectrum->add_flag("--total", c.total, "Also integrate I(omega) over omega and compare with the Larmor energy");

    auto* mirror = app.add_subcommand("mirror", "Moving-mirror beta coefficients and Fermi-Dirac totals");
    add_common(mirror, p);
    p.pq.bind(mirror, "pq", "p+q");
    p.omega.bind(mirror, "omega", "frequency");
    p.theta.bind(mirror, "theta", "polar angle");
    mirror->add_option("--mode", p.mode_strings, "Mode pair P,Q checked against the zeta constraint (repeatable)");
    mirror->add_flag("--duality", c.duality, "Compare the electron photon count / e^2 with the mirror count");
    mirror->add_flag("--limit", c.limit, "Add the leading-order zeta -> -1 form on the p+q grid");

    auto* check = app.add_subcommand("check", "Run the acceptance criteria");
    check->add_flag("--json", c.json_report, "Machine-readable report");
    check->add_option("--criterion", c.criteria, "Run only these criteria (repeatable)");
    check->add_option("--override-tol", c.override_tol, "Replace every criterion tolerance with this value");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitSuccess : kExitUsage;
    }

    try {
        const double k = c.kappa;
        c.t_grid = p.t.resolve({-5.0, 5.0, 101});
        c.z_grid = p.z.resolve({0.01 / k, 10.0 / k, 100});
        c.zeta_grid = p.zeta.resolve({-0.9, 0.9, 19});
        c.omega_grid = p.omega.resolve({0.1 * k, 5.0 * k, 50});
        c.theta_grid = p.theta.resolve({0.0, kPi, 7});
        c.pq_grid = p.pq.resolve({0.1 * k, 5.0 * k, 50});
        for (const auto& m : p.mode_strings) c.modes.push_back(parse_mode(m));

        if (check->parsed()) return run_check(c, out);

        Report report;
        if (trajectory->parsed()) {
            c.command = "trajectory";
            report = run_trajectory(c, err);
        } else if (energy->parsed()) {
            c.command = "energy";
            report = run_energy(c, err);
        } else if (distribution->parsed()) {
            c.command = "distribution";
            report = run_distribution(c, err);
        } else if (spectrum->parsed()) {
            c.command = "spectrum";
            report = run_spectrum(c, err);
        } else {
            c.command = "mirror";
            report = run_mirror(c, err);
        }
        emit(report, c, out);
        return kExitSuccess;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConstraintError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const RegimeError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumeric;
    }
}

}  // namespace fdradiance::cli
