#pragma once

#include <complex>
#include <cstddef>
#include <optional>

namespace fdradiance {

using Complex = std::complex<double>;

/// Principal branch of log Gamma(z): the imaginary part is reduced to (-pi, pi].
/// Throws DomainError at the poles z = 0, -1, -2, ... and OverflowError if the
/// result is not representable.
[[nodiscard]] Complex ln_gamma(Complex z);

/// Gamma(z) evaluated as exp(ln_gamma(z)).
[[nodiscard]] Complex gamma(Complex z);

/// Confluent hypergeometric function 1F1(a; b; x) (Kummer's M).
///
/// Re x < 0 is mapped onto Re x >= 0 with Kummer's transformation
/// M(a; b; x) = e^x M(b - a; b; -x). The Taylor series is summed in double
/// precision while it is free of cancellation; inputs where the partial sums
/// lose more than a few digits are re-summed in quad precision, and as a last
/// resort the value is carried out from the origin by Taylor-stepping Kummer's
/// differential equation.
///
/// Throws DomainError if b is a non-positive integer, ConvergenceError if the
/// 10 000-term budget is exhausted and OverflowError on non-finite results.
[[nodiscard]] Complex kummer_1f1(Complex a, Complex b, Complex x);

namespace detail {

inline constexpr std::size_t kSeriesTermBudget = 10000;

/// Outcome of a Taylor-series summation. `loss` is the largest term magnitude
/// divided by the magnitude of the sum, i.e. the cancellation factor.
struct SeriesSum {
    Complex value;
    double loss;
    std::size_t terms;
};

/// Direct Taylor series of 1F1 in double precision, no transformation.
[[nodiscard]] SeriesSum kummer_series(Complex a, Complex b, Complex x);

/// Direct Taylor series of 1F1 in quad precision (long double if the
/// compiler lacks a 128-bit float type), no transformation.
[[nodiscard]] SeriesSum kummer_series_extended(Complex a, Complex b, Complex x);

/// Direct Taylor series of 1F1 in double-extended (hi + lo pair) precision.
[[nodiscard]] SeriesSum kummer_series_double_quad(Complex a, Complex b, Complex x);

/// 1F1 obtained by integrating z y'' + (b - z) y' - a y = 0 from a point near
/// the origin out to x along a straight ray with local Taylor expansions.
[[nodiscard]] Complex kummer_continuation(Complex a, Complex b, Complex x);

/// 1F1 without Kummer's transformation: series first, then the fallbacks.
[[nodiscard]] Complex kummer_1f1_direct(Complex a, Complex b, Complex x);

/// Is z a non-positive integer (pole of Gamma, forbidden 1F1 denominator)?
[[nodiscard]] bool is_nonpositive_integer(Complex z) noexcept;

}  // namespace detail
}  // namespace fdradiance
