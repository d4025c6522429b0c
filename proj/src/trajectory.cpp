#include "fdradiance/trajectory.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fdradiance/errors.hpp"

namespace fdradiance {
namespace {

// Larmor normalisation in Heaviside-Lorentz units (mu_0 = 1).
constexpr double kLarmorFactor = 1.0 / (6.0 * std::numbers::pi);

constexpr int kRootIterations = 200;

void require_position(double z, const char* where) {
    if (!(z > 0.0) || !std::isfinite(z)) {
        throw DomainError(std::string(where) + ": position must be finite and positive, got " +
                          std::to_string(z));
    }
}

// t as a function of s = ln(kappa z).
double time_of_log(const TrajectoryParams& p, double s) {
    const double x = std::exp(s);
    return (0.25 * x * x + 2.0 * s + p.zeta() * x) / p.kappa();
}

}  // namespace

TrajectoryParams::TrajectoryParams(double kappa, double zeta, double e_squared)
    : kappa_(kappa), zeta_(zeta), e_squared_(e_squared) {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
        throw DomainError("kappa must be finite and positive, got " + std::to_string(kappa));
    }
    if (!(zeta > -1.0 && zeta < 1.0)) {
        throw DomainError("zeta must lie in (-1, 1), got " + std::to_string(zeta));
    }
    if (!(e_squared > 0.0) || !std::isfinite(e_squared)) {
        throw DomainError("e_squared must be finite and positive, got " + std::to_string(e_squared));
    }
}

double inverse_velocity(const TrajectoryParams& params, double z) {
    require_position(z, "inverse_velocity");
    const double x = params.kappa() * z;
    return 0.5 * x + 2.0 / x + params.zeta();
}

double max_velocity(const TrajectoryParams& params) { return 1.0 / (2.0 + params.zeta()); }

double coordinate_time(const TrajectoryParams& params, double z) {
    require_position(z, "coordinate_time");
    const double k = params.kappa();
    return 0.25 * k * z * z + (2.0 / k) * std::log(k * z) + z * params.zeta();
}

KinematicState kinematic_state(const TrajectoryParams& params, double z) {
    const double k = params.kappa();
    KinematicState s{};
    s.z = z;
    s.t = coordinate_time(params, z);
    s.v = 1.0 / inverse_velocity(params, z);
    s.gamma = 1.0 / std::sqrt((1.0 - s.v) * (1.0 + s.v));
    const double d_inv_v = 0.5 * k - 2.0 / (k * z * z);
    s.accel = -s.v * s.v * s.v * d_inv_v;
    s.proper_accel = s.gamma * s.gamma * s.gamma * s.accel;
    return s;
}

double position_at_time(const TrajectoryParams& params, double t) {
    if (!std::isfinite(t)) throw DomainError("position_at_time: time must be finite");
    const auto residual = [&](double s) { return time_of_log(params, s) - t; };

    double lo = 0.0, hi = 0.0;
    for (double step = 1.0; residual(lo) > 0.0; step *= 2.0) lo -= step;
    for (double step = 1.0; residual(hi) < 0.0; step *= 2.0) hi += step;

    const double tol = 1e-12 * std::max(1.0, std::fabs(t));
    const auto position = [&](double s) {
        const double z = std::exp(s) / params.kappa();
        if (!(z > 0.0) || !std::isnormal(z)) {
            throw DomainError("position_at_time: position underflows for t = " + std::to_string(t));
        }
        return z;
    };
    double s = 0.5 * (lo + hi);
    for (int iter = 0; iter < kRootIterations; ++iter) {
        const double f = residual(s);
        if (std::fabs(f) <= 0.01 * tol) return position(s);
        if (f < 0.0) lo = s; else hi = s;
        // dt/ds = z / v with z = e^s / kappa.
        const double x = std::exp(s);
        const double slope = (0.5 * x * x + 2.0 + params.zeta() * x) / params.kappa();
        const double newton = s - f / slope;
        if (std::fabs(newton - s) <= 2.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(s))) {
            return position(newton);
        }
        s = (newton >= lo && newton <= hi) ? newton : 0.5 * (lo + hi);
    }
    const double z = std::exp(s) / params.kappa();
    if (std::fabs(residual(s)) <= tol && z > 0.0 && std::isnormal(z)) return z;
    throw ConvergenceError("position_at_time: root finder exhausted its budget", {z, 0.0},
                           std::fabs(residual(s)), kRootIterations);
}

PenrosePoint penrose_coordinates(const TrajectoryParams& params, double z) {
    const double t = coordinate_time(params, z);
    return {std::atan(t - z), std::atan(t + z)};
}

double larmor_power(const TrajectoryParams& params, double z) {
    const KinematicState s = kinematic_state(params, z);
    const double g3 = s.gamma * s.gamma * s.gamma;
    const double a = g3 * s.accel;
    return kLarmorFactor * params.e_squared() * a * a;
}

RealQuadrature total_energy_larmor(const TrajectoryParams& params, double tol) {
    const auto integrand = [&params](double z) {
        return larmor_power(params, z) * inverse_velocity(params, z);
    };
    const double z_peak = 2.0 / params.kappa();  // velocity maximum, zero of the power
    AdaptiveOptions options;
    options.scale = z_peak;
    const RealQuadrature inner = integrate_adaptive(integrand, 0.0, z_peak, tol, options);
    const RealQuadrature outer = integrate_adaptive(integrand, z_peak, INFINITY, tol, options);
    return {inner.value + outer.value, inner.abs_error + outer.abs_error,
            inner.evaluations + outer.evaluations};
}

}  // namespace fdradiance
