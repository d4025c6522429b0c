#include "fdradiance/mirror.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fdradiance/errors.hpp"

namespace fdradiance {
namespace {

constexpr double kPi = std::numbers::pi;

void require_closed_zeta(double zeta) {
    if (!(zeta >= -1.0 && zeta <= 1.0)) {
        throw DomainError("zeta must lie in [-1, 1], got " + std::to_string(zeta));
    }
}

void require_kappa(double kappa) {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
        throw DomainError("kappa must be finite and positive, got " + std::to_string(kappa));
    }
}

double fermi_factor(double y) {
    const double damp = std::exp(-2.0 * kPi * y);
    return damp / (1.0 + damp);
}

// Both numeric companions integrate g(u) (u/2) |beta(u)|^2 with modes on the
// constraint line.
template <typename Weight>
RealQuadrature reduced_integral(double kappa, double zeta, double tol, Weight weight) {
    require_kappa(kappa);
    require_closed_zeta(zeta);
    AdaptiveOptions options;
    options.scale = kappa;
    return integrate_adaptive(
        [&](double u) {
            const ModePair modes{0.5 * u * (1.0 + zeta), 0.5 * u * (1.0 - zeta)};
            return weight(u) * 0.5 * u * beta_squared_fd(modes, kappa, zeta).beta_squared;
        },
        0.0, INFINITY, tol, options);
}

}  // namespace

ModePair map_to_modes(double omega, const EmissionDirection& dir) {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw DomainError("map_to_modes: omega must be finite and positive");
    }
    const double c = dir.cos_theta();
    return {0.5 * omega * (1.0 + c), 0.5 * omega * (1.0 - c)};
}

ModePair special_angle_modes(double omega, double zeta) {
    return map_to_modes(omega, EmissionDirection::from_cos(zeta));
}

BetaCoefficient beta_squared_from_distribution(const SpectralSample& sample, double e_squared) {
    if (!(e_squared > 0.0) || !std::isfinite(e_squared)) {
        throw DomainError("e_squared must be finite and positive");
    }
    const ModePair modes = map_to_modes(sample.omega, EmissionDirection(sample.theta));
    const double beta_sq = 4.0 * kPi * sample.value / (e_squared * sample.omega * sample.omega);
    return {modes, beta_sq};
}

double distribution_from_beta(const BetaCoefficient& beta, double e_squared) {
    const double omega = beta.modes.p + beta.modes.q;
    return e_squared * omega * omega / (4.0 * kPi) * beta.beta_squared;
}

BetaCoefficient beta_squared_fd(const ModePair& modes, double kappa, double zeta) {
    require_kappa(kappa);
    require_closed_zeta(zeta);
    const double p = modes.p, q = modes.q;
    if (!(p >= 0.0 && q >= 0.0 && p + q > 0.0) || !std::isfinite(p + q)) {
        throw DomainError("mode frequencies must be non-negative with p + q > 0");
    }
    const double u = p + q;
    if (std::fabs(p * (1.0 - zeta) - q * (1.0 + zeta)) > kModeConstraintTolerance * u) {
        throw ConstraintError("modes (p, q) = (" + std::to_string(p) + ", " + std::to_string(q) +
                              ") violate p/q = (1 + zeta)/(1 - zeta) for zeta = " + std::to_string(zeta));
    }
    const double value = (1.0 - zeta) * (1.0 + zeta) / (2.0 * kPi * u * kappa) * fermi_factor(u / kappa);
    return {modes, value};
}

BetaCoefficient beta_squared_fd_limit(double q, double kappa, double zeta) {
    require_kappa(kappa);
    require_closed_zeta(zeta);
    if (!(q > 0.0) || !std::isfinite(q)) throw DomainError("q must be finite and positive");
    if (std::fabs(1.0 + zeta) > kLimitRegime) {
        throw RegimeError("leading-order form needs |1 + zeta| <= 0.1, got zeta = " + std::to_string(zeta));
    }
    const ModePair modes{q * (1.0 + zeta) / (1.0 - zeta), q};
    const double value = (1.0 + zeta) / (kPi * q * kappa) * fermi_factor(q / kappa);
    return {modes, value};
}

double mirror_fd_energy(double kappa, double zeta) {
    require_kappa(kappa);
    require_closed_zeta(zeta);
    return kappa * (1.0 - zeta) * (1.0 + zeta) / (192.0 * kPi);
}

double mirror_particle_count(double zeta) {
    require_closed_zeta(zeta);
    return (1.0 - zeta) * (1.0 + zeta) * std::numbers::ln2 / (8.0 * kPi * kPi);
}

RealQuadrature mirror_fd_energy_numeric(double kappa, double zeta, double tol) {
    return reduced_integral(kappa, zeta, tol, [](double u) { return u; });
}

RealQuadrature mirror_particle_count_numeric(double kappa, double zeta, double tol) {
    return reduced_integral(kappa, zeta, tol, [](double) { return 1.0; });
}

}  // namespace fdradiance
