#pragma once

#include <cstddef>
#include <numbers>

#include "fdradiance/quadrature.hpp"

namespace fdradiance {

inline constexpr double kFineStructure = 7.2973525693e-3;
/// e^2 = 4 pi alpha in Heaviside-Lorentz natural units.
inline constexpr double kDefaultESquared = 4.0 * std::numbers::pi * kFineStructure;

/// The worldline t(z) = (kappa/4) z^2 + (2/kappa) ln(kappa z) + zeta z, z > 0.
class TrajectoryParams {
public:
    /// Throws DomainError unless kappa > 0, -1 < zeta < 1 and e_squared > 0.
    TrajectoryParams(double kappa, double zeta, double e_squared = kDefaultESquared);

    [[nodiscard]] double kappa() const noexcept { return kappa_; }
    [[nodiscard]] double zeta() const noexcept { return zeta_; }
    [[nodiscard]] double e_squared() const noexcept { return e_squared_; }

private:
    double kappa_;
    double zeta_;
    double e_squared_;
};

struct KinematicState {
    double z;
    double t;
    double v;
    double gamma;
    double accel;         // dv/dt
    double proper_accel;  // gamma^3 dv/dt
};

/// dt/dz = 1/v = kappa z/2 + 2/(kappa z) + zeta.
[[nodiscard]] double inverse_velocity(const TrajectoryParams& params, double z);

/// Largest speed along the worldline, 1/(2 + zeta), reached at kappa z = 2.
[[nodiscard]] double max_velocity(const TrajectoryParams& params);

/// t(z). Throws DomainError for z <= 0.
[[nodiscard]] double coordinate_time(const TrajectoryParams& params, double z);

[[nodiscard]] KinematicState kinematic_state(const TrajectoryParams& params, double z);

/// Inverts t(z). The root is bracketed on s = ln(kappa z) and polished with
/// safeguarded Newton steps; at most 200 iterations (ConvergenceError).
/// Throws DomainError when the position underflows to zero.
[[nodiscard]] double position_at_time(const TrajectoryParams& params, double t);

/// Compactified null coordinates U = atan(t - z), V = atan(t + z).
struct PenrosePoint {
    double u;
    double v;
};

[[nodiscard]] PenrosePoint penrose_coordinates(const TrajectoryParams& params, double z);

/// Relativistic Larmor power for rectilinear motion, e^2 gamma^6 a^2 / (6 pi).
[[nodiscard]] double larmor_power(const TrajectoryParams& params, double z);

/// E = int_0^inf P(z)/v(z) dz to relative tolerance tol (default 1e-9).
[[nodiscard]] RealQuadrature total_energy_larmor(const TrajectoryParams& params, double tol = 1e-9);

/// zeta below which the energy is flagged as approaching its zeta -> -1 blow-up.
inline constexpr double kDivergenceWarningZeta = -0.95;

[[nodiscard]] inline bool energy_near_divergence(const TrajectoryParams& params) noexcept {
    return params.zeta() < kDivergenceWarningZeta;
}

}  // namespace fdradiance
