#include "fdradiance/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "fdradiance/errors.hpp"

namespace fdradiance {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Kronrod abscissae (descending) and weights of the 15-point rule; the
// 7-point Gauss rule uses the odd-indexed abscissae.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

double magnitude(double v) { return std::fabs(v); }
double magnitude(Complex v) { return std::abs(v); }
bool is_finite(double v) { return std::isfinite(v); }
bool is_finite(Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

template <typename T>
struct Segment {
    double a;
    double b;
    T value;
    double err;
    bool at_floor;  // error estimate cannot be reduced further in double precision
};

template <typename T, typename F>
Segment<T> gauss_kronrod_15(const F& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const T fc = f(centre);
    std::array<T, 8> f1{}, f2{};
    T res_g = fc * kWg[3];
    T res_k = fc * kWgk[7];
    double res_abs = kWgk[7] * magnitude(fc);
    bool finite = is_finite(fc);
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = f(centre - dx);
        f2[j] = f(centre + dx);
        finite = finite && is_finite(f1[j]) && is_finite(f2[j]);
        const T pair = f1[j] + f2[j];
        res_k += kWgk[j] * pair;
        res_abs += kWgk[j] * (magnitude(f1[j]) + magnitude(f2[j]));
        if (j % 2 == 1) res_g += kWg[j / 2] * pair;
    }
    if (!finite) {
        throw NonFiniteIntegrand("integrand is not finite on [" + std::to_string(a) + ", " +
                                 std::to_string(b) + "]");
    }
    const T mean = res_k * 0.5;
    double res_asc = kWgk[7] * magnitude(fc - mean);
    for (std::size_t j = 0; j < 7; ++j) {
        res_asc += kWgk[j] * (magnitude(f1[j] - mean) + magnitude(f2[j] - mean));
    }
    const double scale = std::fabs(half);
    res_abs *= scale;
    res_asc *= scale;
    double err = magnitude((res_k - res_g) * half);
    if (res_asc != 0.0 && err != 0.0) {
        err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    }
    const double floor = 50.0 * kEps * res_abs;
    bool at_floor = false;
    if (res_abs > std::numeric_limits<double>::min() / (50.0 * kEps) && err <= floor) {
        err = floor;
        at_floor = true;
    }
    return {a, b, res_k * half, err, at_floor};
}

template <typename T, typename F>
QuadratureResult<T> adaptive(const F& f, double a, double b, double tol,
                             const AdaptiveOptions& options) {
    std::vector<Segment<T>> segments;
    std::vector<std::size_t> heap;  // indices of refinable segments, max-heap on err
    const auto by_error = [&segments](std::size_t i, std::size_t j) {
        if (segments[i].err != segments[j].err) return segments[i].err < segments[j].err;
        return i > j;
    };

    std::size_t evaluations = 0;
    T total{};
    double active_err = 0.0;
    double frozen_err = 0.0;
    const auto admit = [&](const Segment<T>& s) {
        segments.push_back(s);
        total += s.value;
        const double width = s.b - s.a;
        const bool too_narrow = width <= 8.0 * kEps * std::max(std::fabs(s.a), std::fabs(s.b));
        if (s.at_floor || too_narrow) {
            frozen_err += s.err;
        } else {
            active_err += s.err;
            heap.push_back(segments.size() - 1);
            std::push_heap(heap.begin(), heap.end(), by_error);
        }
    };

    admit(gauss_kronrod_15<T>(f, a, b));
    evaluations += 15;

    for (;;) {
        const double target = std::max(tol * magnitude(total), options.abs_floor);
        if (active_err + frozen_err <= target || heap.empty()) break;
        if (frozen_err > target && active_err <= 0.05 * frozen_err) break;
        if (evaluations + 30 > options.max_evaluations) {
            Complex best;
            if constexpr (std::is_same_v<T, Complex>) {
                best = total;
            } else {
                best = Complex{total, 0.0};
            }
            throw ConvergenceError("integrate_adaptive: evaluation budget of " +
                                       std::to_string(options.max_evaluations) + " exhausted",
                                   best, active_err + frozen_err, evaluations);
        }
        std::pop_heap(heap.begin(), heap.end(), by_error);
        const std::size_t worst = heap.back();
        heap.pop_back();
        const Segment<T> parent = segments[worst];
        segments[worst].err = -1.0;  // retired
        total -= parent.value;
        active_err = std::max(0.0, active_err - parent.err);

        const double mid = 0.5 * (parent.a + parent.b);
        admit(gauss_kronrod_15<T>(f, parent.a, mid));
        admit(gauss_kronrod_15<T>(f, mid, parent.b));
        evaluations += 30;
    }

    // Deterministic final reduction in left-to-right order.
    std::vector<const Segment<T>*> leaves;
    for (const auto& s : segments) {
        if (s.err >= 0.0) leaves.push_back(&s);
    }
    std::sort(leaves.begin(), leaves.end(),
              [](const Segment<T>* l, const Segment<T>* r) { return l->a < r->a; });
    QuadratureResult<T> result;
    for (const auto* s : leaves) {
        result.value += s->value;
        result.abs_error += s->err;
    }
    result.evaluations = evaluations;
    return result;
}

template <typename T>
QuadratureResult<T> integrate_any(const std::function<T(double)>& f, double lo, double hi,
                                  double tol, const AdaptiveOptions& options) {
    if (!std::isfinite(lo) || std::isnan(hi) || !(lo < hi)) {
        throw DomainError("integrate_adaptive: need finite lo < hi");
    }
    if (!(tol > 0.0)) throw DomainError("integrate_adaptive: tolerance must be positive");
    if (std::isfinite(hi)) return adaptive<T>(f, lo, hi, tol, options);

    if (!(options.scale > 0.0)) throw DomainError("integrate_adaptive: mapping scale must be positive");
    const double s = options.scale;
    const auto mapped = [&f, lo, s](double r) -> T {
        const double one_minus = 1.0 - r;
        return f(lo + s * r / one_minus) * (s / (one_minus * one_minus));
    };
    return adaptive<T>(mapped, 0.0, 1.0, tol, options);
}

}  // namespace

RealQuadrature integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                  double tol, const AdaptiveOptions& options) {
    return integrate_any<double>(f, lo, hi, tol, options);
}

ComplexQuadrature integrate_adaptive_complex(const std::function<Complex(double)>& f, double lo,
                                             double hi, double tol, const AdaptiveOptions& options) {
    return integrate_any<Complex>(f, lo, hi, tol, options);
}

double default_rotation(const OscillatoryPhaseSpec& spec) {
    // Saddles of phi: 2 a z^2 + c z + b = 0 (a = quad, b = log, c = lin).
    const double a = spec.quad_coeff, b = spec.log_coeff, c = spec.lin_coeff;
    const double disc = c * c - 8.0 * a * b;
    double angle;
    if (disc < 0.0) {
        angle = std::atan2(std::sqrt(-disc), -c);
    } else if (c < 0.0) {
        angle = 0.0;  // saddles on the positive real axis
    } else if (c > 0.0) {
        angle = std::numbers::pi;
    } else {
        angle = 0.25 * std::numbers::pi;
    }
    return std::clamp(angle, kMinRotation, kMaxRotation);
}

ComplexQuadrature integrate_oscillatory(const OscillatoryPhaseSpec& spec, double tol,
                                        const OscillatoryOptions& options) {
    const double qc = spec.quad_coeff, lc = spec.log_coeff, bc = spec.lin_coeff;
    if (!std::isfinite(qc) || !(qc > 0.0)) {
        throw DomainError("integrate_oscillatory: quad_coeff must be positive");
    }
    if (!std::isfinite(lc) || lc < 0.0) {
        throw DomainError("integrate_oscillatory: log_coeff must be non-negative");
    }
    if (!std::isfinite(bc)) throw DomainError("integrate_oscillatory: lin_coeff must be finite");
    if (!(tol > 0.0 && tol < 1.0)) throw DomainError("integrate_oscillatory: tol must lie in (0, 1)");
    const double delta = options.rotation.value_or(default_rotation(spec));
    if (!(delta > 0.0 && delta < 0.5 * std::numbers::pi)) {
        throw DomainError("integrate_oscillatory: rotation must lie in (0, pi/2)");
    }

    const Complex i{0.0, 1.0};
    const Complex ray = std::polar(1.0, delta);
    const double sin_d = std::sin(delta);
    const double sin_2d = std::sin(2.0 * delta);
    const double r_scale = 1.0 / std::sqrt(qc);

    // log |integrand| on the ray up to the constant -lc delta, counting the
    // Jacobian r of the substitution r = r_scale e^u. It is concave in r.
    const auto envelope = [&](double r) { return std::log(r) - qc * r * r * sin_2d - bc * r * sin_d; };
    const double r_peak = (-bc * sin_d + std::sqrt(bc * bc * sin_d * sin_d + 8.0 * qc * sin_2d)) /
                          (4.0 * qc * sin_2d);
    const double cutoff = envelope(r_peak) - 60.0;
    double r_hi = std::max(2.0 * r_peak, r_scale);
    while (envelope(r_hi) > cutoff) r_hi *= 1.5;
    const double r_lo = 1e-20 * std::min(r_scale, r_peak);

    const auto integrand = [&](double u) -> Complex {
        const double r = r_scale * std::exp(u);
        const Complex z = r * ray;
        const Complex exponent = i * (qc * z * z + bc * z) + i * lc * Complex{std::log(r), delta};
        return ray * r * std::exp(exponent);
    };

    AdaptiveOptions adaptive_options;
    adaptive_options.abs_floor = 0.0;
    const double oscillations = std::fabs(bc) * r_scale;
    adaptive_options.max_evaluations =
        static_cast<std::size_t>(double(options.max_evaluations) * std::max(1.0, oscillations));
    ComplexQuadrature body = integrate_adaptive_complex(
        integrand, std::log(r_lo / r_scale), std::log(r_hi / r_scale), tol, adaptive_options);

    // int_0^{r_lo} of the leading behaviour e^{i delta} (r e^{i delta})^{i lc}.
    const Complex one_plus = Complex{1.0, lc};
    const Complex head = ray * std::exp(-lc * delta + one_plus * std::log(r_lo)) / one_plus;
    const double head_error = std::abs(head) * (std::fabs(bc) * r_lo + qc * r_lo * r_lo);

    body.value += head;
    body.abs_error += head_error;
    return body;
}

const GaussLegendreRule& gauss_legendre(std::size_t n) {
    static std::mutex mutex;
    static std::map<std::size_t, GaussLegendreRule> cache;
    if (n == 0) throw DomainError("gauss_legendre: order must be positive");
    const std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;

    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const std::size_t half = (n + 1) / 2;
    for (std::size_t k = 0; k < half; ++k) {
        double x = std::cos(std::numbers::pi * (double(k) + 0.75) / (double(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (std::size_t j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * double(j) - 1.0) * x * p1 - (double(j) - 1.0) * p0) / double(j);
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) <= 1e-16) break;
        }
        // Refresh the derivative at the converged node.
        double p0 = 1.0, p1 = x;
        for (std::size_t j = 2; j <= n; ++j) {
            const double p2 = ((2.0 * double(j) - 1.0) * x * p1 - (double(j) - 1.0) * p0) / double(j);
            p0 = p1;
            p1 = p2;
        }
        dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[k] = -x;
        rule.nodes[n - 1 - k] = x;
        rule.weights[k] = w;
        rule.weights[n - 1 - k] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return cache.emplace(n, std::move(rule)).first->second;
}

}  // namespace fdradiance
