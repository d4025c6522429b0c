#include "fdradiance/acceptance.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <random>

#include "fdradiance/mirror.hpp"
#include "fdradiance/specfun.hpp"
#include "fdradiance/spectra.hpp"
#include "fdradiance/trajectory.hpp"

namespace fdradiance {
namespace {

constexpr double kPi = std::numbers::pi;

// E / (e^2 kappa) at zeta = 0.
const double kClosedFormEnergy = (1.0 / 36.0) * (1.0 / (3.0 * std::sqrt(3.0)) - 1.0 / (4.0 * kPi));

constexpr std::array<double, 5> kGridOmega = {0.25, 0.5, 1.0, 2.0, 4.0};
constexpr std::array<double, 5> kGridTheta = {kPi / 6, kPi / 3, kPi / 2, 2 * kPi / 3, 5 * kPi / 6};
constexpr std::array<double, 3> kFdZetas = {-0.5, 0.0, 0.5};

double rel_diff(double value, double reference) {
    return std::fabs(value - reference) / std::fabs(reference);
}

struct Criterion {
    int id;
    const char* name;
    double time_limit;
    std::function<std::vector<AcceptanceCheck>()> run;
};

std::vector<AcceptanceCheck> total_energy_closed_form() {
    const TrajectoryParams params(1.0, 0.0, 1.0);
    const double e = total_energy_larmor(params).value;
    return {{"rel_error", rel_diff(e, kClosedFormEnergy), 1e-6}};
}

std::vector<AcceptanceCheck> spectral_closure() {
    const TrajectoryParams params(1.0, 0.0, 1.0);
    SpectrumOptions options;
    options.tol = 1e-6;
    options.method = SpectralMethod::exact_zeta0;
    const double e = total_energy_spectral(params, options).value;
    return {{"rel_error", rel_diff(e, kClosedFormEnergy), 1e-3}};
}

std::vector<AcceptanceCheck> special_angle_reduction() {
    const TrajectoryParams params(1.0, 0.0, 1.0);
    double worst = 0.0;
    for (double y : {0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        const double exact = distribution_exact_zeta0(1.0, 1.0, y, EmissionDirection(kPi / 2)).value;
        worst = std::max(worst, rel_diff(exact, fermi_dirac_distribution(params, y).value));
    }
    return {{"max_rel_error", worst, 1e-10}};
}

std::vector<AcceptanceCheck> oscillatory_correctness() {
    const TrajectoryParams params(1.0, 0.0, 1.0);
    double worst = 0.0;
    for (double y : kGridOmega) {
        for (double theta : kGridTheta) {
            const EmissionDirection dir(theta);
            const double numeric = distribution_numeric(params, y, dir, 1e-8).value;
            const double exact = distribution_exact_zeta0(1.0, 1.0, y, dir).value;
            worst = std::max(worst, rel_diff(numeric, exact));
        }
    }
    return {{"max_rel_error", worst, 1e-6}};
}

std::vector<AcceptanceCheck> fd_partial_energy_check() {
    double worst = 0.0;
    for (double zeta : kFdZetas) {
        const TrajectoryParams params(1.0, zeta, 1.0);
        worst = std::max(worst, rel_diff(fd_partial_energy_numeric(params).value, fd_partial_energy(params)));
    }
    return {{"max_rel_error", worst, 1e-8}};
}

std::vector<AcceptanceCheck> particle_count_duality() {
    double closed = 0.0, duality = 0.0;
    for (double zeta : kFdZetas) {
        const TrajectoryParams params(1.0, zeta);
        const double e2 = params.e_squared();
        const double electron = fd_particle_count_numeric(params).value;
        const double reference = e2 * (1.0 - zeta * zeta) * std::numbers::ln2 / (8.0 * kPi * kPi);
        closed = std::max(closed, rel_diff(electron, reference));
        duality = std::max(duality, rel_diff(electron, e2 * mirror_particle_count_numeric(1.0, zeta).value));
    }
    return {{"electron_vs_closed_form", closed, 1e-8}, {"electron_vs_mirror", duality, 1e-8}};
}

std::vector<AcceptanceCheck> duality_round_trip() {
    const TrajectoryParams params(1.0, 0.0);
    double worst = 0.0;
    for (double y : kGridOmega) {
        for (double theta : kGridTheta) {
            const SpectralSample sample = distribution_numeric(params, y, EmissionDirection(theta), 1e-8);
            const BetaCoefficient beta = beta_squared_from_distribution(sample, params.e_squared());
            worst = std::max(worst, rel_diff(distribution_from_beta(beta, params.e_squared()), sample.value));
        }
    }
    return {{"max_rel_error", worst, 1e-12}};
}

std::vector<AcceptanceCheck> energy_trend() {
    double violations = 0.0;
    double previous = INFINITY;
    for (double zeta : {-0.9, -0.6, -0.3, 0.0, 0.3, 0.6, 0.9}) {
        const double e = total_energy_larmor(TrajectoryParams(1.0, zeta, 1.0)).value;
        if (!std::isfinite(e) || !(e > 0.0) || !(e < previous)) violations += 1.0;
        previous = e;
    }
    return {{"trend_violations", violations, 0.0}};
}

std::vector<AcceptanceCheck> special_function_suite() {
    double reflection = 0.0;
    for (int k = 0; k <= 100; ++k) {
        const double y = 0.1 * k;
        const double lhs = std::exp(2.0 * ln_gamma(Complex{0.5, y}).real());
        const double rhs = kPi / std::cosh(kPi * y);
        reflection = std::max(reflection, std::fabs(lhs - rhs) / rhs);
    }

    // Both sides are summed without the transformation so that the identity
    // compares two independent evaluations.
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    const auto point = [&](double radius) {
        for (;;) {
            const Complex z{radius * uniform(rng), radius * uniform(rng)};
            if (std::abs(z) <= radius) return z;
        }
    };
    double kummer = 0.0;
    for (int n = 0; n < 200; ++n) {
        const Complex a = point(20.0);
        Complex b = point(20.0);
        // Keep b at least 0.5 away from the non-positive integers.
        while (std::abs(b - std::min(0.0, std::round(b.real()))) < 0.5) b = point(20.0);
        const Complex x = point(20.0);
        const Complex lhs = detail::kummer_1f1_direct(a, b, x);
        const Complex rhs = std::exp(x) * detail::kummer_1f1_direct(b - a, b, -x);
        kummer = std::max(kummer, std::abs(lhs - rhs) / std::abs(lhs));
    }
    return {{"reflection_max_rel_error", reflection, 1e-12}, {"kummer_transform_max_rel_error", kummer, 1e-10}};
}

std::vector<AcceptanceCheck> limit_regime() {
    const double zeta = -0.99;
    double worst = 0.0;
    for (int k = 0; k <= 49; ++k) {
        const double q = 0.1 + (5.0 - 0.1) * k / 49.0;
        const BetaCoefficient lead = beta_squared_fd_limit(q, 1.0, zeta);
        const BetaCoefficient full = beta_squared_fd(lead.modes, 1.0, zeta);
        worst = std::max(worst, rel_diff(lead.beta_squared, full.beta_squared));
    }
    return {{"max_rel_difference", worst, 2.0 * std::fabs(1.0 + zeta)}};
}

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {1, "total energy closed form", 1.0, total_energy_closed_form},
        {2, "spectral-Larmor energy closure", 60.0, spectral_closure},
        {3, "special-angle reduction of the exact distribution", 1.0, special_angle_reduction},
        {4, "oscillatory integral vs exact distribution", 30.0, oscillatory_correctness},
        {5, "Fermi-Dirac partial energy", 5.0, fd_partial_energy_check},
        {6, "particle-count duality", 5.0, particle_count_duality},
        {7, "distribution to beta round trip", 1.0, duality_round_trip},
        {8, "energy decreases with zeta", 10.0, energy_trend},
        {9, "special-function identities", 5.0, special_function_suite},
        {10, "zeta -> -1 leading-order beta", 1.0, limit_regime},
    };
    return all;
}

}  // namespace

bool CriterionResult::passed() const noexcept {
    if (error || checks.empty() || seconds > time_limit) return false;
    return std::all_of(checks.begin(), checks.end(), [](const AcceptanceCheck& c) { return c.passed(); });
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
    std::vector<CriterionResult> results;
    for (const Criterion& c : criteria()) {
        if (!options.only.empty() &&
            std::find(options.only.begin(), options.only.end(), c.id) == options.only.end()) {
            continue;
        }
        CriterionResult r{c.id, c.name, {}, 0.0, c.time_limit, std::nullopt};
        const auto start = std::chrono::steady_clock::now();
        try {
            r.checks = c.run();
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (options.override_tolerance) {
            for (auto& check : r.checks) check.tolerance = *options.override_tolerance;
        }
        results.push_back(std::move(r));
    }
    return results;
}

std::string format_criterion(const CriterionResult& result) {
    char buffer[256];
    std::string line = result.passed() ? "PASS" : "FAIL";
    std::snprintf(buffer, sizeof buffer, " C%d %s:", result.id, result.name.c_str());
    line += buffer;
    if (result.error) line += " error: " + *result.error + ";";
    for (const auto& check : result.checks) {
        std::snprintf(buffer, sizeof buffer, " %s %.3e %s %.3e;", check.label.c_str(), check.measured,
                      check.passed() ? "<=" : ">", check.tolerance);
        line += buffer;
    }
    std::snprintf(buffer, sizeof buffer, " runtime %.3f s %s %.0f s", result.seconds,
                  result.seconds <= result.time_limit ? "<=" : ">", result.time_limit);
    line += buffer;
    return line;
}

}  // namespace fdradiance
