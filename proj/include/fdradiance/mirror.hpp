#pragma once

#include "fdradiance/quadrature.hpp"
#include "fdradiance/spectra.hpp"

namespace fdradiance {

/// Right- and left-moving scalar frequencies of the mirror side.
struct ModePair {
    double p;
    double q;
};

struct BetaCoefficient {
    ModePair modes;
    double beta_squared;
};

/// Relative tolerance on p (1 - zeta) = q (1 + zeta) accepted by beta_squared_fd.
inline constexpr double kModeConstraintTolerance = 1e-9;

/// Largest |1 + zeta| for which the zeta -> -1 leading-order form is offered.
inline constexpr double kLimitRegime = 0.1;

/// p = omega (1 + cos theta)/2, q = omega (1 - cos theta)/2.
[[nodiscard]] ModePair map_to_modes(double omega, const EmissionDirection& dir);

/// Modes of the special direction cos theta = zeta at frequency omega.
[[nodiscard]] ModePair special_angle_modes(double omega, double zeta);

/// |beta_pq|^2 = (4 pi / e^2 omega^2) dI/dOmega.
[[nodiscard]] BetaCoefficient beta_squared_from_distribution(const SpectralSample& sample,
                                                             double e_squared);

/// Inverse of beta_squared_from_distribution: (e^2 omega^2 / 4 pi) |beta|^2.
[[nodiscard]] double distribution_from_beta(const BetaCoefficient& beta, double e_squared);

/// |beta_pq|^2 = (1 - zeta^2) / (2 pi (p+q) kappa) / (e^{2 pi (p+q)/kappa} + 1)
/// for modes with p/q = (1 + zeta)/(1 - zeta). Throws ConstraintError when
/// |p (1 - zeta) - q (1 + zeta)| > 1e-9 (p + q). zeta may be -1 or 1.
[[nodiscard]] BetaCoefficient beta_squared_fd(const ModePair& modes, double kappa, double zeta);

/// Leading order of beta_squared_fd as zeta -> -1 at fixed q:
/// (1 + zeta) / (pi q kappa) / (e^{2 pi q/kappa} + 1). The partner mode is
/// p = q (1 + zeta)/(1 - zeta). Throws RegimeError when |1 + zeta| > 0.1.
[[nodiscard]] BetaCoefficient beta_squared_fd_limit(double q, double kappa, double zeta);

/// kappa (1 - zeta^2) / (192 pi), accepting -1 <= zeta <= 1.
[[nodiscard]] double mirror_fd_energy(double kappa, double zeta);

/// (1 - zeta^2) ln 2 / (8 pi^2), accepting -1 <= zeta <= 1.
[[nodiscard]] double mirror_particle_count(double zeta);

/// int dp dq delta((p-q)/(p+q) - zeta) (p+q) |beta_pq|^2, reduced to
/// int_0^inf (u/2) u |beta|^2 du over u = p + q and integrated numerically.
[[nodiscard]] RealQuadrature mirror_fd_energy_numeric(double kappa, double zeta, double tol = 1e-12);

/// int dp dq delta((p-q)/(p+q) - zeta) |beta_pq|^2 over u = p + q as above.
[[nodiscard]] RealQuadrature mirror_particle_count_numeric(double kappa, double zeta,
                                                           double tol = 1e-12);

}  // namespace fdradiance
