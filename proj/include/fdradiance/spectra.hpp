#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fdradiance/quadrature.hpp"
#include "fdradiance/trajectory.hpp"

namespace fdradiance {

/// Polar angle of the observation direction, measured from the z-axis.
/// Built either from theta or from cos theta; the cosine is kept exactly so
/// that the special direction cos theta0 = zeta is represented without
/// rounding.
class EmissionDirection {
public:
    /// Throws DomainError unless 0 <= theta <= pi.
    explicit EmissionDirection(double theta);
    /// Throws DomainError unless -1 <= cos_theta <= 1.
    [[nodiscard]] static EmissionDirection from_cos(double cos_theta);
    /// cos theta0 = zeta.
    [[nodiscard]] static EmissionDirection special(const TrajectoryParams& params) {
        return from_cos(params.zeta());
    }

    [[nodiscard]] double theta() const noexcept { return theta_; }
    [[nodiscard]] double cos_theta() const noexcept { return cos_; }
    [[nodiscard]] double sin_theta() const noexcept { return sin_; }

private:
    EmissionDirection(double theta, double c, double s) : theta_(theta), cos_(c), sin_(s) {}
    double theta_;
    double cos_;
    double sin_;
};

enum class SpectralMethod { numeric, exact_zeta0, fermi_dirac };

[[nodiscard]] std::string_view to_string(SpectralMethod method) noexcept;

/// dI/dOmega at one (omega, theta).
struct SpectralSample {
    double omega;
    double theta;
    double value;
    SpectralMethod method;
    double abs_error;
};

enum class CurveKind { energy_spectrum, particle_spectrum };

[[nodiscard]] std::string_view to_string(CurveKind kind) noexcept;

struct SpectralCurve {
    std::vector<double> omegas;
    std::vector<double> values;
    std::vector<double> abs_errors;
    CurveKind kind;
};

/// Phase phi(z) = omega (t(z) - z cos theta) split into its z^2, ln z and z
/// coefficients. The constant (2 omega/kappa) ln kappa is dropped; it does
/// not change |int e^{i phi}|.
[[nodiscard]] OscillatoryPhaseSpec phase_spec(const TrajectoryParams& params, double omega,
                                              const EmissionDirection& dir);

/// dI/dOmega = (e^2 omega^2 / 16 pi^3) sin^2 theta |int_0^inf e^{i phi(z)} dz|^2
/// with the integral from integrate_oscillatory at relative tolerance tol.
[[nodiscard]] SpectralSample distribution_numeric(const TrajectoryParams& params, double omega,
                                                  const EmissionDirection& dir, double tol = 1e-8);

/// Closed form of dI/dOmega for zeta = 0 in terms of Gamma(1/2 - iy),
/// Gamma(1 - iy) and two 1F1 values, y = omega/kappa.
[[nodiscard]] SpectralSample distribution_exact_zeta0(double kappa, double e_squared, double omega,
                                                      const EmissionDirection& dir);

/// dI/dOmega in the special direction cos theta0 = zeta:
/// (1 - zeta^2) (e^2 / 8 pi^2) (omega/kappa) / (e^{2 pi omega/kappa} + 1).
[[nodiscard]] SpectralSample fermi_dirac_distribution(const TrajectoryParams& params, double omega);

struct SpectrumOptions {
    double tol = 1e-8;
    /// Absolute error accepted regardless of tol.
    double abs_floor = 0.0;
    /// Angular integrand; unset means exact_zeta0 when zeta == 0, numeric otherwise.
    std::optional<SpectralMethod> method;
    std::size_t initial_order = 64;
    std::size_t max_order = 1024;
    /// Workers for angular nodes / curve points (0 = hardware concurrency).
    std::size_t threads = 1;
};

/// I(omega) = 2 pi int_{-1}^{1} dI/dOmega d(cos theta) with Gauss-Legendre
/// rules of increasing order until two successive orders agree.
[[nodiscard]] RealQuadrature energy_spectrum(const TrajectoryParams& params, double omega,
                                             const SpectrumOptions& options = {});

/// N(omega) = I(omega) / omega.
[[nodiscard]] RealQuadrature particle_spectrum(const TrajectoryParams& params, double omega,
                                               const SpectrumOptions& options = {});

/// I(omega) or N(omega) on a strictly ascending grid of positive frequencies.
[[nodiscard]] SpectralCurve spectrum_curve(const TrajectoryParams& params,
                                           std::span<const double> omegas, CurveKind kind,
                                           const SpectrumOptions& options = {});

/// Frequency at which the omega integral is first truncated, in units of kappa.
inline constexpr double kInitialCutoff = 30.0;

/// int_0^inf I(omega) d omega. The range is cut where I drops below 1e-12 of
/// its peak (starting from 30 kappa, doubling as needed) and the next
/// doubling is added to confirm that the tail is negligible.
[[nodiscard]] RealQuadrature total_energy_spectral(const TrajectoryParams& params,
                                                   const SpectrumOptions& options = {});

/// Energy radiated in the special direction, e^2 kappa (1 - zeta^2) / (192 pi).
/// Accepts the closed interval -1 <= zeta <= 1.
[[nodiscard]] double fd_partial_energy(double kappa, double zeta, double e_squared);
[[nodiscard]] double fd_partial_energy(const TrajectoryParams& params);

/// Photon count in the special direction, e^2 (1 - zeta^2) ln 2 / (8 pi^2).
[[nodiscard]] double fd_particle_count(double zeta, double e_squared);
[[nodiscard]] double fd_particle_count(const TrajectoryParams& params);

/// 2 pi int_0^inf (Fermi-Dirac dI/dOmega) d omega by adaptive quadrature.
[[nodiscard]] RealQuadrature fd_partial_energy_numeric(const TrajectoryParams& params,
                                                       double tol = 1e-12);

/// 2 pi int_0^inf (Fermi-Dirac dI/dOmega) / omega d omega by adaptive quadrature.
[[nodiscard]] RealQuadrature fd_particle_count_numeric(const TrajectoryParams& params,
                                                       double tol = 1e-12);

}  // namespace fdradiance
