#include "fdradiance/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fdradiance/errors.hpp"
#include "fdradiance/parallel.hpp"
#include "fdradiance/specfun.hpp"

namespace fdradiance {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCutoffRatio = 1e-12;
constexpr int kMaxCutoffDoublings = 10;
// Relative accuracy assumed for each Gamma * 1F1 product.
constexpr double kExactAmplitudeAccuracy = 1e-13;

void require_frequency(double omega, const char* where) {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw DomainError(std::string(where) + ": omega must be finite and positive, got " +
                          std::to_string(omega));
    }
}

void require_tolerance(double tol, const char* where) {
    if (!(tol > 0.0 && tol < 1.0)) {
        throw DomainError(std::string(where) + ": tolerance must lie in (0, 1)");
    }
}

void require_closed_zeta(double zeta) {
    if (!(zeta >= -1.0 && zeta <= 1.0)) {
        throw DomainError("zeta must lie in [-1, 1], got " + std::to_string(zeta));
    }
}

// 1 / (e^{2 pi y} + 1) without overflow.
double fermi_factor(double y) {
    const double damp = std::exp(-2.0 * kPi * y);
    return damp / (1.0 + damp);
}

SpectralMethod resolve_method(const TrajectoryParams& params, const SpectrumOptions& options) {
    const SpectralMethod method =
        options.method.value_or(params.zeta() == 0.0 ? SpectralMethod::exact_zeta0 : SpectralMethod::numeric);
    if (method == SpectralMethod::fermi_dirac) {
        throw DomainError("the Fermi-Dirac form holds only in the special direction and cannot be "
                          "integrated over angles");
    }
    if (method == SpectralMethod::exact_zeta0 && params.zeta() != 0.0) {
        throw DomainError("the exact distribution is available only for zeta = 0");
    }
    return method;
}

}  // namespace

EmissionDirection::EmissionDirection(double theta) : theta_(theta), cos_(0.0), sin_(0.0) {
    if (!(theta >= 0.0 && theta <= kPi)) {
        throw DomainError("theta must lie in [0, pi], got " + std::to_string(theta));
    }
    cos_ = std::cos(theta);
    sin_ = (theta == 0.0 || theta == kPi) ? 0.0 : std::sin(theta);
}

EmissionDirection EmissionDirection::from_cos(double cos_theta) {
    if (!(cos_theta >= -1.0 && cos_theta <= 1.0)) {
        throw DomainError("cos theta must lie in [-1, 1], got " + std::to_string(cos_theta));
    }
    return {std::acos(cos_theta), cos_theta, std::sqrt((1.0 - cos_theta) * (1.0 + cos_theta))};
}

std::string_view to_string(SpectralMethod method) noexcept {
    switch (method) {
        case SpectralMethod::numeric: return "numeric";
        case SpectralMethod::exact_zeta0: return "exact-zeta0";
        case SpectralMethod::fermi_dirac: return "fermi-dirac";
    }
    return "unknown";
}

std::string_view to_string(CurveKind kind) noexcept {
    switch (kind) {
        case CurveKind::energy_spectrum: return "energy-spectrum";
        case CurveKind::particle_spectrum: return "particle-spectrum";
    }
    return "unknown";
}

OscillatoryPhaseSpec phase_spec(const TrajectoryParams& params, double omega,
                                const EmissionDirection& dir) {
    const double k = params.kappa();
    return {0.25 * k * omega, 2.0 * omega / k, omega * (params.zeta() - dir.cos_theta())};
}

SpectralSample distribution_numeric(const TrajectoryParams& params, double omega,
                                    const EmissionDirection& dir, double tol) {
    require_frequency(omega, "distribution_numeric");
    require_tolerance(tol, "distribution_numeric");
    SpectralSample sample{omega, dir.theta(), 0.0, SpectralMethod::numeric, 0.0};
    const double s = dir.sin_theta();
    if (s == 0.0) return sample;
    const ComplexQuadrature j = integrate_oscillatory(phase_spec(params, omega, dir), tol);
    const double prefactor = params.e_squared() * omega * omega * s * s / (16.0 * kPi * kPi * kPi);
    const double modulus = std::abs(j.value);
    sample.value = prefactor * modulus * modulus;
    sample.abs_error = prefactor * j.abs_error * (2.0 * modulus + j.abs_error);
    return sample;
}

SpectralSample distribution_exact_zeta0(double kappa, double e_squared, double omega,
                                        const EmissionDirection& dir) {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("kappa must be finite and positive");
    if (!(e_squared > 0.0) || !std::isfinite(e_squared)) {
        throw DomainError("e_squared must be finite and positive");
    }
    require_frequency(omega, "distribution_exact_zeta0");
    SpectralSample sample{omega, dir.theta(), 0.0, SpectralMethod::exact_zeta0, 0.0};
    const double s = dir.sin_theta();
    if (s == 0.0) return sample;

    const double y = omega / kappa;
    const double c = dir.cos_theta();
    const Complex iy{0.0, y};
    const Complex x = iy * (c * c);
    // e^{-pi y} is split evenly over the two Gamma factors.
    const Complex g_half = std::exp(ln_gamma(Complex{0.5, -y}) - 0.5 * kPi * y);
    const Complex g_one = std::exp(ln_gamma(Complex{1.0, -y}) - 0.5 * kPi * y);
    const Complex a = kummer_1f1(Complex{0.5, -y}, 0.5, x);
    const Complex b = kummer_1f1(Complex{1.0, -y}, 1.5, x);
    const Complex first = g_half * a;
    const Complex second = 2.0 * c * std::sqrt(iy) * g_one * b;
    const double prefactor = e_squared * omega * s * s / (16.0 * kPi * kPi * kPi * kappa);
    const double modulus = std::abs(first + second);
    // Backward directions (cos theta < 0) subtract two terms of similar size.
    const double amplitude_error = kExactAmplitudeAccuracy * (std::abs(first) + std::abs(second));
    sample.value = prefactor * modulus * modulus;
    sample.abs_error = prefactor * amplitude_error * (2.0 * modulus + amplitude_error);
    if (!std::isfinite(sample.value) || !std::isfinite(sample.abs_error)) {
        throw OverflowError("distribution_exact_zeta0: value not representable at omega = " +
                            std::to_string(omega));
    }
    return sample;
}

SpectralSample fermi_dirac_distribution(const TrajectoryParams& params, double omega) {
    require_frequency(omega, "fermi_dirac_distribution");
    const double zeta = params.zeta();
    const double y = omega / params.kappa();
    const double value = (1.0 - zeta) * (1.0 + zeta) * params.e_squared() / (8.0 * kPi * kPi) * y * fermi_factor(y);
    return {omega, std::acos(zeta), value, SpectralMethod::fermi_dirac, 0.0};
}

RealQuadrature energy_spectrum(const TrajectoryParams& params, double omega,
                               const SpectrumOptions& options) {
    require_frequency(omega, "energy_spectrum");
    require_tolerance(options.tol, "energy_spectrum");
    const SpectralMethod method = resolve_method(params, options);
    const double inner_tol = std::max(0.1 * options.tol, 1e-13);

    const auto sample = [&](double c) {
        const EmissionDirection dir = EmissionDirection::from_cos(c);
        if (method == SpectralMethod::exact_zeta0) {
            // Where the closed form cancels too strongly the oscillatory
            // integral stands in for it.
            try {
                const SpectralSample exact =
                    distribution_exact_zeta0(params.kappa(), params.e_squared(), omega, dir);
                if (exact.abs_error <= std::max(inner_tol * exact.value, 0.01 * options.abs_floor)) {
                    return exact;
                }
            } catch (const OverflowError&) {
            } catch (const ConvergenceError&) {
            }
        }
        return distribution_numeric(params, omega, dir, inner_tol);
    };

    std::size_t evaluations = 0;
    const auto apply_rule = [&](std::size_t n) {
        const GaussLegendreRule& rule = gauss_legendre(n);
        std::vector<SpectralSample> samples(n);
        parallel_for(n, options.threads, [&](std::size_t i) { samples[i] = sample(rule.nodes[i]); });
        evaluations += n;
        RealQuadrature r;
        for (std::size_t i = 0; i < n; ++i) {
            r.value += rule.weights[i] * samples[i].value;
            r.abs_error += rule.weights[i] * samples[i].abs_error;
        }
        r.value *= 2.0 * kPi;
        r.abs_error *= 2.0 * kPi;
        return r;
    };

    RealQuadrature previous = apply_rule(options.initial_order);
    for (std::size_t n = 2 * options.initial_order; n <= options.max_order; n *= 2) {
        RealQuadrature current = apply_rule(n);
        const double diff = std::fabs(current.value - previous.value);
        if (diff <= std::max(options.tol * std::fabs(current.value), options.abs_floor)) {
            current.abs_error += diff;
            current.evaluations = evaluations;
            return current;
        }
        previous = current;
    }
    throw ConvergenceError("energy_spectrum: angular rules up to order " +
                               std::to_string(options.max_order) + " disagree at omega = " +
                               std::to_string(omega),
                           {previous.value, 0.0}, previous.abs_error, evaluations);
}

RealQuadrature particle_spectrum(const TrajectoryParams& params, double omega,
                                 const SpectrumOptions& options) {
    RealQuadrature r = energy_spectrum(params, omega, options);
    r.value /= omega;
    r.abs_error /= omega;
    return r;
}

SpectralCurve spectrum_curve(const TrajectoryParams& params, std::span<const double> omegas,
                             CurveKind kind, const SpectrumOptions& options) {
    if (omegas.empty()) throw DomainError("spectrum_curve: empty frequency grid");
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        require_frequency(omegas[i], "spectrum_curve");
        if (i > 0 && !(omegas[i] > omegas[i - 1])) {
            throw DomainError("spectrum_curve: frequency grid must be strictly ascending");
        }
    }
    SpectralCurve curve;
    curve.kind = kind;
    curve.omegas.assign(omegas.begin(), omegas.end());
    curve.values.resize(omegas.size());
    curve.abs_errors.resize(omegas.size());
    SpectrumOptions serial = options;
    serial.threads = 1;
    parallel_for(omegas.size(), options.threads, [&](std::size_t i) {
        const RealQuadrature r = kind == CurveKind::energy_spectrum
                                     ? energy_spectrum(params, omegas[i], serial)
                                     : particle_spectrum(params, omegas[i], serial);
        curve.values[i] = r.value;
        curve.abs_errors[i] = r.abs_error;
    });
    return curve;
}

RealQuadrature total_energy_spectral(const TrajectoryParams& params, const SpectrumOptions& options) {
    require_tolerance(options.tol, "total_energy_spectral");
    const double k = params.kappa();
    SpectrumOptions inner = options;
    inner.tol = 0.1 * options.tol;

    std::size_t evaluations = 0;
    const auto spectrum = [&](double omega) {
        const RealQuadrature r = energy_spectrum(params, omega, inner);
        evaluations += r.evaluations;
        return r.value;
    };

    double peak = 0.0;
    for (double y : {0.05, 0.1, 0.2, 0.5, 1.0, 2.0}) peak = std::max(peak, spectrum(y * k));
    // Per-frequency accuracy far below the peak is irrelevant for the integral.
    inner.abs_floor = 1e-3 * options.tol * peak;

    double cutoff = kInitialCutoff * k;
    for (int i = 0; spectrum(cutoff) > kCutoffRatio * peak; ++i) {
        if (i == kMaxCutoffDoublings) {
            throw ConvergenceError("total_energy_spectral: spectrum does not decay below the cutoff ratio");
        }
        cutoff *= 2.0;
    }

    AdaptiveOptions adaptive;
    adaptive.abs_floor = 0.0;
    RealQuadrature total = integrate_adaptive(spectrum, 0.0, cutoff, options.tol, adaptive);
    for (int i = 0;; ++i) {
        adaptive.abs_floor = 0.1 * options.tol * std::fabs(total.value);
        const RealQuadrature tail = integrate_adaptive(spectrum, cutoff, 2.0 * cutoff, options.tol, adaptive);
        total.value += tail.value;
        total.abs_error += tail.abs_error;
        cutoff *= 2.0;
        if (std::fabs(tail.value) <= options.tol * std::fabs(total.value)) break;
        if (i == kMaxCutoffDoublings) {
            throw ConvergenceError("total_energy_spectral: spectral tail is not negligible",
                                   {total.value, 0.0}, total.abs_error, evaluations);
        }
    }
    total.evaluations = evaluations;
    return total;
}

double fd_partial_energy(double kappa, double zeta, double e_squared) {
    require_closed_zeta(zeta);
    return e_squared * kappa * (1.0 - zeta) * (1.0 + zeta) / (192.0 * kPi);
}

double fd_partial_energy(const TrajectoryParams& params) {
    return fd_partial_energy(params.kappa(), params.zeta(), params.e_squared());
}

double fd_particle_count(double zeta, double e_squared) {
    require_closed_zeta(zeta);
    return e_squared * (1.0 - zeta) * (1.0 + zeta) * std::numbers::ln2 / (8.0 * kPi * kPi);
}

double fd_particle_count(const TrajectoryParams& params) {
    return fd_particle_count(params.zeta(), params.e_squared());
}

RealQuadrature fd_partial_energy_numeric(const TrajectoryParams& params, double tol) {
    AdaptiveOptions options;
    options.scale = params.kappa();
    RealQuadrature r = integrate_adaptive(
        [&params](double omega) { return fermi_dirac_distribution(params, omega).value; }, 0.0,
        INFINITY, tol, options);
    r.value *= 2.0 * kPi;
    r.abs_error *= 2.0 * kPi;
    return r;
}

RealQuadrature fd_particle_count_numeric(const TrajectoryParams& params, double tol) {
    AdaptiveOptions options;
    options.scale = params.kappa();
    RealQuadrature r = integrate_adaptive(
        [&params](double omega) { return fermi_dirac_distribution(params, omega).value / omega; },
        0.0, INFINITY, tol, options);
    r.value *= 2.0 * kPi;
    r.abs_error *= 2.0 * kPi;
    return r;
}

}  // namespace fdradiance
