#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace fdradiance {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation
/// (z <= 0 on the worldline, Gamma pole, zeta outside (-1, 1), ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A finite input produced a result that does not fit in a double.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// An iterative procedure ran out of budget before reaching its tolerance.
/// The best estimate reached so far is attached.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::complex<double> best_estimate = {},
                     double abs_error = 0.0, std::size_t evaluations = 0)
        : Error(what), best_estimate_(best_estimate), abs_error_(abs_error),
          evaluations_(evaluations) {}

    [[nodiscard]] std::complex<double> best_estimate() const noexcept { return best_estimate_; }
    [[nodiscard]] double abs_error() const noexcept { return abs_error_; }
    [[nodiscard]] std::size_t evaluations() const noexcept { return evaluations_; }

private:
    std::complex<double> best_estimate_;
    double abs_error_;
    std::size_t evaluations_;
};

/// An integrand returned NaN or infinity inside the integration interval.
class NonFiniteIntegrand : public Error {
public:
    using Error::Error;
};

/// Mode pair inconsistent with the special-angle constraint p/q = (1+zeta)/(1-zeta).
class ConstraintError : public Error {
public:
    using Error::Error;
};

/// An asymptotic formula was requested outside its regime of validity.
class RegimeError : public Error {
public:
    using Error::Error;
};

}  // namespace fdradiance
