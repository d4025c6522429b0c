#include "fdradiance/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fdradiance/errors.hpp"

namespace fdradiance {
namespace {

constexpr double kPi = std::numbers::pi;

// Stirling coefficients B_2k / (2k (2k - 1)), k = 1..10.
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,         -1.0 / 360.0,          1.0 / 1260.0,      -1.0 / 1680.0,
    1.0 / 1188.0,       -691.0 / 360360.0,     1.0 / 156.0,       -3617.0 / 122400.0,
    43867.0 / 244188.0, -174611.0 / 125400.0};

// |w| beyond which the truncated Stirling series is accurate to ~1e-20.
constexpr double kStirlingRadius = 15.0;

bool finite(Complex z) noexcept { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// log Gamma(z) for Re z >= 0.5, on the analytic branch that is real on the
// positive axis. Every shifted argument stays in the right half-plane, so the
// principal logs of the shift factors add up without branch jumps.
Complex ln_gamma_right(Complex z) {
    Complex shift{0.0, 0.0};
    Complex w = z;
    while (std::abs(w) < kStirlingRadius) {
        shift += std::log(w);
        w += 1.0;
    }
    const Complex inv = 1.0 / w;
    const Complex inv2 = inv * inv;
    Complex series{0.0, 0.0};
    Complex power = inv;
    for (double c : kStirling) {
        series += c * power;
        power *= inv2;
    }
    const double half_ln_two_pi = 0.5 * std::log(2.0 * kPi);
    return (w - 0.5) * std::log(w) - w + half_ln_two_pi + series - shift;
}

// Some branch of log sin(pi z), computed without overflow for large |Im z|.
Complex log_sin_pi(Complex z) {
    // Exact reduction of the real part to [-1/2, 1/2]; sin(pi (z + n)) = (-1)^n sin(pi z).
    const double n = std::nearbyint(z.real());
    const Complex w{z.real() - n, z.imag()};
    const bool odd = std::fmod(std::fabs(n), 2.0) == 1.0;
    const Complex sign_log = odd ? Complex{0.0, kPi} : Complex{0.0, 0.0};

    if (std::fabs(w.imag()) < 15.0) {
        return std::log(std::sin(kPi * w)) + sign_log;
    }
    // sin(pi w) = e^{-i pi w} (e^{2 i pi w} - 1) / (2i) for Im w > 0, conjugate otherwise.
    const bool upper = w.imag() > 0.0;
    const Complex v = upper ? w : std::conj(w);
    const Complex i{0.0, 1.0};
    const Complex tail = std::exp(2.0 * i * kPi * v) - 1.0;
    Complex value = -i * kPi * v + std::log(tail / (2.0 * i));
    if (!upper) value = std::conj(value);
    return value + sign_log;
}

Complex principal(Complex z) {
    double im = std::remainder(z.imag(), 2.0 * kPi);
    if (im <= -kPi) im += 2.0 * kPi;
    return {z.real(), im};
}

// Minimal complex arithmetic usable with any floating type, including
// __float128 for which std::complex is unspecified.
template <typename Real>
struct Cx {
    Real re{0};
    Real im{0};

    Cx() = default;
    Cx(Real r, Real i) : re(r), im(i) {}
    explicit Cx(Complex z) : re(static_cast<Real>(z.real())), im(static_cast<Real>(z.imag())) {}

    friend Cx operator+(Cx a, Cx b) { return {a.re + b.re, a.im + b.im}; }
    friend Cx operator-(Cx a, Cx b) { return {a.re - b.re, a.im - b.im}; }
    friend Cx operator*(Cx a, Cx b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cx operator*(Cx a, Real s) { return {a.re * s, a.im * s}; }
    friend Cx operator/(Cx a, Cx b) {
        const Real den = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
    }
    Cx& operator+=(Cx b) { re = re + b.re; im = im + b.im; return *this; }

    [[nodiscard]] double magnitude() const {
        return std::hypot(static_cast<double>(re), static_cast<double>(im));
    }
    [[nodiscard]] Complex to_double() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
};

#if defined(__SIZEOF_FLOAT128__)
using ExtendedReal = __float128;
constexpr int kExtendedDigits = 113;
#else
using ExtendedReal = long double;
constexpr int kExtendedDigits = std::numeric_limits<long double>::digits;
#endif

// Unevaluated sum hi + lo of two ExtendedReal values (the double-double
// construction one level up), giving roughly twice the extended precision.
class DoubleExtended {
public:
    using R = ExtendedReal;

    DoubleExtended() = default;
    DoubleExtended(R hi, R lo) : hi_(hi), lo_(lo) {}
    template <typename T>
        requires(std::is_arithmetic_v<T> || std::is_same_v<T, ExtendedReal>)
    explicit DoubleExtended(T v) : hi_(static_cast<R>(v)) {}

    explicit operator double() const { return static_cast<double>(hi_) + static_cast<double>(lo_); }
    friend bool operator==(const DoubleExtended& x, const DoubleExtended& y) {
        return x.hi_ == y.hi_ && x.lo_ == y.lo_;
    }

    friend DoubleExtended operator+(const DoubleExtended& x, const DoubleExtended& y) {
        auto [s, e] = two_sum(x.hi_, y.hi_);
        e += x.lo_ + y.lo_;
        return quick_two_sum(s, e);
    }
    friend DoubleExtended operator-(const DoubleExtended& x, const DoubleExtended& y) {
        return x + DoubleExtended{-y.hi_, -y.lo_};
    }
    friend DoubleExtended operator*(const DoubleExtended& x, const DoubleExtended& y) {
        auto [p, e] = two_prod(x.hi_, y.hi_);
        e += x.hi_ * y.lo_ + x.lo_ * y.hi_;
        return quick_two_sum(p, e);
    }
    friend DoubleExtended operator/(const DoubleExtended& x, const DoubleExtended& y) {
        const R q1 = x.hi_ / y.hi_;
        DoubleExtended r = x - y * DoubleExtended{q1};
        const R q2 = r.hi_ / y.hi_;
        r = r - y * DoubleExtended{q2};
        const R q3 = r.hi_ / y.hi_;
        return quick_two_sum(q1, q2) + DoubleExtended{q3};
    }

private:
    static DoubleExtended quick_two_sum(R a, R b) {
        const R s = a + b;
        return {s, b - (s - a)};
    }
    static std::pair<R, R> two_sum(R a, R b) {
        const R s = a + b;
        const R bb = s - a;
        return {s, (a - (s - bb)) + (b - bb)};
    }
    static std::pair<R, R> split(R a) {
        constexpr int kHalfMantissa = (kExtendedDigits + 1) / 2;
        const R splitter = static_cast<R>((1ULL << kHalfMantissa) + 1);
        const R t = splitter * a;
        const R hi = t - (t - a);
        return {hi, a - hi};
    }
    static std::pair<R, R> two_prod(R a, R b) {
        const R p = a * b;
        const auto [ah, al] = split(a);
        const auto [bh, bl] = split(b);
        return {p, ((ah * bh - p) + ah * bl + al * bh) + al * bl};
    }

    R hi_{0};
    R lo_{0};
};

template <typename Real>
constexpr double unit_roundoff() {
    if constexpr (std::is_same_v<Real, DoubleExtended>) {
        return 0.5 * std::ldexp(1.0, -2 * kExtendedDigits);
    } else {
        return 0.5 * std::ldexp(1.0, 1 - (std::is_same_v<Real, ExtendedReal> ? kExtendedDigits
                                                                            : std::numeric_limits<Real>::digits));
    }
}

// Taylor series of M(a; b; x) in precision Real, optionally with x M'(x).
// Stops once three consecutive terms are below the unit roundoff relative to
// the partial sum and the term ratio has settled below 1/2, so the neglected
// tail is bounded.
template <typename Real>
struct SeriesState {
    Cx<Real> value;
    Cx<Real> x_derivative;  // x * M'(x) = sum of n t_n
    double loss;
    std::size_t terms;
};

template <typename Real, bool WithDerivative>
SeriesState<Real> series_impl(Complex a_in, Complex b_in, Complex x_in) {
    using C = Cx<Real>;
    const C a{a_in}, b{b_in}, x{x_in};
    const double tol = unit_roundoff<Real>();
    const double abs_x = std::abs(x_in);

    C term{Real(1), Real(0)};
    C sum = term;
    C dsum{Real(0), Real(0)};
    double max_term = 1.0;
    int small = 0;
    const auto loss_of = [&](double s) { return s > 0.0 ? max_term / s : HUGE_VAL; };
    for (std::size_t n = 0; n < detail::kSeriesTermBudget; ++n) {
        const Real rn = static_cast<Real>(n);
        const C an = a + C{rn, Real(0)};
        if (an.re == Real(0) && an.im == Real(0)) {
            // a is a non-positive integer: the series terminates.
            return {sum, dsum, loss_of(sum.magnitude()), n + 1};
        }
        term = term * an * x / ((b + C{rn, Real(0)}) * C{rn + Real(1), Real(0)});
        sum += term;
        if constexpr (WithDerivative) dsum += term * (rn + Real(1));
        const double t = term.magnitude() * (WithDerivative ? double(n + 1) : 1.0);
        double s = sum.magnitude();
        if constexpr (WithDerivative) s = std::min(s, dsum.magnitude());
        if (!std::isfinite(t) || !std::isfinite(s)) {
            throw OverflowError("kummer_1f1: series terms overflow");
        }
        max_term = std::max(max_term, term.magnitude());
        const double next_ratio = std::abs(a_in + double(n + 1)) * abs_x /
                                  (std::abs(b_in + double(n + 1)) * double(n + 2));
        if (t <= tol * s) {
            if (++small >= 3 && next_ratio < 0.5) {
                return {sum, dsum, loss_of(sum.magnitude()), n + 2};
            }
        } else {
            small = 0;
        }
    }
    throw ConvergenceError("kummer_1f1: series did not converge within the term budget",
                           sum.to_double());
}

template <typename Real>
detail::SeriesSum series_sum(Complex a, Complex b, Complex x) {
    const auto s = series_impl<Real, false>(a, b, x);
    return {s.value.to_double(), s.loss, s.terms};
}

// Largest tolerated cancellation in the series that seeds the continuation.
constexpr double kSeedLossLimit = 1e8;

// The seed point is pulled in from x until its series is accurate. Errors in
// the seed excite the second solution z^{1-b} M(a-b+1; 2-b; z), which can grow
// like (|x| / |x0|)^{Re(1-b)} along the ray, so the seed is placed as far out
// as possible.
template <typename Real>
Complex continuation_impl(Complex a_in, Complex b_in, Complex x_in) {
    using C = Cx<Real>;
    const double abs_x = std::abs(x_in);
    const Complex dir = x_in / abs_x;

    double r0 = abs_x;
    SeriesState<Real> seed{};
    for (;;) {
        bool ok = false;
        try {
            seed = series_impl<Real, true>(a_in, b_in, dir * r0);
            ok = seed.loss <= kSeedLossLimit;
        } catch (const ConvergenceError&) {
        } catch (const OverflowError&) {
        }
        if (ok) break;
        r0 *= 0.7;
        if (r0 < 1e-12 * abs_x) throw ConvergenceError("kummer_1f1: no usable seed for continuation");
    }
    if (r0 == abs_x) return seed.value.to_double();

    Complex z0_d = dir * r0;
    C y = seed.value;
    C dy = seed.x_derivative / C{z0_d};
    double travelled = r0;

    const C a{a_in}, b{b_in};
    const double tol = unit_roundoff<Real>();
    std::size_t steps = 0;
    while (travelled < abs_x) {
        if (++steps > detail::kSeriesTermBudget) {
            throw ConvergenceError("kummer_1f1: continuation exceeded its step budget");
        }
        // Local exponents of the equation: z lambda^2 + (b - z) lambda - a = 0.
        const Complex zb = z0_d - b_in;
        const Complex disc = std::sqrt(zb * zb + 4.0 * a_in * z0_d);
        const double lam = std::max({std::abs((zb + disc) / (2.0 * z0_d)),
                                     std::abs((zb - disc) / (2.0 * z0_d)), 1e-300});
        const double len = std::min({0.5 * travelled, 1.5 / lam, abs_x - travelled});
        const bool last = len >= abs_x - travelled;
        const Complex h_d = last ? x_in - z0_d : dir * len;

        // d_k = c_k h^k with z0 (k+1)(k+2) c_{k+2} = -(k+1)(k + b - z0) c_{k+1} + (k + a) c_k.
        const C z0{z0_d}, h{h_d};
        C d0 = y, d1 = dy * h;
        C value = d0 + d1;
        C deriv = d1;  // h * y'(z0 + h)
        int small = 0;
        constexpr std::size_t kLocalBudget = 2000;
        for (std::size_t k = 0;; ++k) {
            if (k == kLocalBudget) {
                throw ConvergenceError("kummer_1f1: local Taylor step did not converge");
            }
            const Real rk = static_cast<Real>(k);
            const C num = (d1 * h) * (Real(-1) * (rk + Real(1))) * (C{rk, Real(0)} + b - z0) +
                          (C{rk, Real(0)} + a) * d0 * h * h;
            const C d2 = num / (z0 * C{(rk + Real(1)) * (rk + Real(2)), Real(0)});
            value += d2;
            deriv += d2 * (rk + Real(2));
            const double t = d2.magnitude() * double(k + 2);
            if (!std::isfinite(t)) throw OverflowError("kummer_1f1: continuation overflow");
            if (t <= tol * std::min(value.magnitude(), deriv.magnitude()) || t == 0.0) {
                if (++small >= 3) break;
            } else {
                small = 0;
            }
            d0 = d1;
            d1 = d2;
        }
        y = value;
        dy = deriv / h;
        z0_d += h_d;
        travelled = last ? abs_x : travelled + len;
    }
    return y.to_double();
}

// Cancellation factors beyond which a summation is handed to the next method.
constexpr double kDoubleLossLimit = 1e3;
constexpr double kExtendedLossLimit = 1e16;
constexpr double kDoubleQuadLossLimit = 1e48;

void check_finite_result(Complex v, const char* what) {
    if (!finite(v)) throw OverflowError(std::string(what) + ": result not representable");
}

}  // namespace

namespace detail {

bool is_nonpositive_integer(Complex z) noexcept {
    return z.imag() == 0.0 && z.real() <= 0.0 && std::nearbyint(z.real()) == z.real();
}

SeriesSum kummer_series(Complex a, Complex b, Complex x) { return series_sum<double>(a, b, x); }

SeriesSum kummer_series_extended(Complex a, Complex b, Complex x) {
    return series_sum<ExtendedReal>(a, b, x);
}

SeriesSum kummer_series_double_quad(Complex a, Complex b, Complex x) {
    return series_sum<DoubleExtended>(a, b, x);
}

Complex kummer_continuation(Complex a, Complex b, Complex x) {
    if (x == Complex{0.0, 0.0}) return {1.0, 0.0};
    return continuation_impl<ExtendedReal>(a, b, x);
}

Complex kummer_1f1_direct(Complex a, Complex b, Complex x) {
    try {
        const SeriesSum s = kummer_series(a, b, x);
        if (s.loss <= kDoubleLossLimit) return s.value;
        const SeriesSum e = kummer_series_extended(a, b, x);
        if (e.loss <= kExtendedLossLimit) return e.value;
    } catch (const ConvergenceError&) {
    } catch (const OverflowError&) {
    }
    try {
        const SeriesSum d = kummer_series_double_quad(a, b, x);
        if (d.loss <= kDoubleQuadLossLimit) return d.value;
    } catch (const ConvergenceError&) {
    } catch (const OverflowError&) {
    }
    return kummer_continuation(a, b, x);
}

}  // namespace detail

Complex ln_gamma(Complex z) {
    if (!finite(z)) throw DomainError("ln_gamma: non-finite argument");
    if (detail::is_nonpositive_integer(z)) {
        throw DomainError("ln_gamma: pole of Gamma at z = " + std::to_string(z.real()));
    }
    Complex value;
    if (z.real() < 0.5) {
        // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z).
        value = std::log(kPi) - log_sin_pi(z) - ln_gamma_right(1.0 - z);
    } else {
        value = ln_gamma_right(z);
    }
    value = principal(value);
    check_finite_result(value, "ln_gamma");
    return value;
}

Complex gamma(Complex z) {
    const Complex lg = ln_gamma(z);
    if (lg.real() > std::log(std::numeric_limits<double>::max())) {
        throw OverflowError("gamma: |Gamma(z)| exceeds the double range");
    }
    return std::exp(lg);
}

Complex kummer_1f1(Complex a, Complex b, Complex x) {
    if (!finite(a) || !finite(b) || !finite(x)) throw DomainError("kummer_1f1: non-finite argument");
    if (detail::is_nonpositive_integer(b)) {
        throw DomainError("kummer_1f1: b must not be a non-positive integer");
    }
    if (x == Complex{0.0, 0.0}) return {1.0, 0.0};

    Complex value;
    if (x.real() < 0.0) {
        value = std::exp(x) * detail::kummer_1f1_direct(b - a, b, -x);
    } else {
        value = detail::kummer_1f1_direct(a, b, x);
    }
    check_finite_result(value, "kummer_1f1");
    return value;
}

}  // namespace fdradiance
