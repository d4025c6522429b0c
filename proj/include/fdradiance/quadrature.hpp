#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fdradiance/specfun.hpp"

namespace fdradiance {

template <typename T>
struct QuadratureResult {
    T value{};
    double abs_error = 0.0;
    std::size_t evaluations = 0;
};

using RealQuadrature = QuadratureResult<double>;
using ComplexQuadrature = QuadratureResult<Complex>;

struct AdaptiveOptions {
    /// Absolute error below which any result is accepted.
    double abs_floor = 1e-300;
    /// Hard cap on integrand evaluations.
    std::size_t max_evaluations = 1'000'000;
    /// Length scale s of the map z = lo + s r / (1 - r) used when hi is +inf.
    double scale = 1.0;
};

/// Adaptive Gauss-Kronrod (7/15) integration of a real function over [lo, hi].
/// hi may be +infinity, in which case the interval is mapped onto [0, 1).
/// Intervals are bisected in order of decreasing error estimate until the
/// summed estimate drops below max(tol |value|, abs_floor). Intervals whose
/// estimate is already at the rounding floor are not split again; when those
/// alone exceed the target the result is returned with the larger abs_error.
///
/// Throws DomainError for lo >= hi or a non-finite lo, NonFiniteIntegrand if f
/// returns NaN/inf, and ConvergenceError (with the best estimate attached)
/// when the evaluation budget runs out.
[[nodiscard]] RealQuadrature integrate_adaptive(const std::function<double(double)>& f, double lo,
                                                double hi, double tol,
                                                const AdaptiveOptions& options = {});

/// Complex-valued counterpart of integrate_adaptive.
[[nodiscard]] ComplexQuadrature integrate_adaptive_complex(const std::function<Complex(double)>& f,
                                                           double lo, double hi, double tol,
                                                           const AdaptiveOptions& options = {});

/// Phase phi(z) = quad_coeff z^2 + log_coeff ln z + lin_coeff z of the
/// semi-infinite oscillatory integrals int_0^inf exp(i phi(z)) dz.
struct OscillatoryPhaseSpec {
    double quad_coeff = 1.0;
    double log_coeff = 0.0;
    double lin_coeff = 0.0;
};

struct OscillatoryOptions {
    /// Angle of the rotated ray z = r e^{i delta}, in (0, pi/2). When unset the
    /// ray is pointed at the upper saddle point of phi (clamped to
    /// [kMinRotation, kMaxRotation]), which keeps the integrand on the ray
    /// close to the size of the integral.
    std::optional<double> rotation;
    std::size_t max_evaluations = 1'000'000;
};

inline constexpr double kMinRotation = 0.19634954084936207;  // pi/16
inline constexpr double kMaxRotation = 1.413716694115407;    // 0.45 pi

/// Rotation angle used when OscillatoryOptions::rotation is unset.
[[nodiscard]] double default_rotation(const OscillatoryPhaseSpec& spec);

/// int_0^inf exp(i phi(z)) dz, conditionally convergent on the real axis,
/// evaluated on the ray z = r e^{i delta} where the z^2 term gives Gaussian
/// decay. Requires quad_coeff > 0 and log_coeff >= 0.
[[nodiscard]] ComplexQuadrature integrate_oscillatory(const OscillatoryPhaseSpec& spec, double tol,
                                                      const OscillatoryOptions& options = {});

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule; rules are cached after first use.
[[nodiscard]] const GaussLegendreRule& gauss_legendre(std::size_t n);

}  // namespace fdradiance
