#pragma once

// Independent reference evaluations used only by the tests.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_complex.hpp>

#include "fdradiance/quadrature.hpp"

namespace oracle {

using HighComplex = boost::multiprecision::cpp_complex_100;
using HighReal = boost::multiprecision::cpp_bin_float_100;

// 1F1(a; b; x) by its Taylor series at 100 decimal digits.
inline std::complex<double> kummer_series(std::complex<double> a, std::complex<double> b,
                                          std::complex<double> x) {
    const HighComplex ha(a.real(), a.imag()), hb(b.real(), b.imag()), hx(x.real(), x.imag());
    HighComplex term(1), sum(1);
    const HighReal stop("1e-40");
    for (int n = 0; n < 20000; ++n) {
        term *= (ha + n) / (hb + n) * hx / (n + 1);
        sum += term;
        if (n > std::abs(x) && abs(term) <= stop * abs(sum)) {
            return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
        }
    }
    throw std::runtime_error("oracle series did not converge");
}

// int_0^inf exp(i phi(z) - eps z) dz along the real axis, phi as in
// OscillatoryPhaseSpec. Pieces span about one local wavelength and use a
// fixed Gauss-Legendre rule; z < 1 is done in s = ln z where the log phase is
// tame. At z ~ 1e4 the phase is ~1e8 rad, so each piece start and its phase
// are kept in long double and the nodes are offsets h from that start:
// phi(z0 + h) = phi(z0) + (2 a z0 + b) h + a h^2 + l ln(1 + h/z0).
inline std::complex<double> damped_integral(const fdradiance::OscillatoryPhaseSpec& spec, double eps) {
    const double a = spec.quad_coeff, l = spec.log_coeff, b = spec.lin_coeff;
    const double two_pi = 2.0 * std::numbers::pi;
    const auto& rule = fdradiance::gauss_legendre(16);
    std::complex<long double> total = 0;

    // s = ln z on [-60, 0].
    for (double s = -60.0; s < 0.0;) {
        const double z = std::exp(s);
        const double next = std::min(0.0, s + two_pi / (std::fabs(2.0 * a * z * z + l + b * z) + 1.0));
        const double half = 0.5 * (next - s);
        std::complex<double> sum = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double t = s + half * (1.0 + rule.nodes[k]);
            const double x = std::exp(t);
            sum += rule.weights[k] * std::polar(x * std::exp(-eps * x), a * x * x + l * t + b * x);
        }
        total += std::complex<long double>(half * sum);
        s = next;
    }

    using Real = long double;
    const Real end = 36.0L / eps;
    for (Real z0 = 1; z0 < end;) {
        const double zd = static_cast<double>(z0);
        const double rate = 2.0 * a * zd + b;
        const double width = std::min(static_cast<double>(end - z0), two_pi / (std::fabs(rate + l / zd) + 1.0));
        const double base = static_cast<double>(
            std::remainder(Real(a) * z0 * z0 + Real(l) * std::log(z0) + Real(b) * z0, 2 * std::numbers::pi_v<Real>));
        const double damp = std::exp(-eps * zd);
        const double half = 0.5 * width;
        std::complex<double> sum = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double h = half * (1.0 + rule.nodes[k]);
            const double p = base + rate * h + a * h * h + l * std::log1p(h / zd);
            sum += rule.weights[k] * std::polar(std::exp(-eps * h), p);
        }
        total += std::complex<long double>(damp * half * sum);
        z0 += width;
    }
    return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

// Richardson extrapolation of damped_integral to eps -> 0 from the halving
// ladder base, base/2, ..., base/2^(levels-1). The damped integral is smooth
// in eps, so each column removes one more power.
inline std::complex<double> damped_limit(const fdradiance::OscillatoryPhaseSpec& spec, double base,
                                         int levels = 4) {
    std::vector<std::complex<double>> table;
    double eps = base;
    for (int i = 0; i < levels; ++i, eps *= 0.5) {
        std::complex<double> carry = damped_integral(spec, eps);
        double factor = 2.0;
        for (auto& entry : table) {
            const std::complex<double> next = (factor * carry - entry) / (factor - 1.0);
            entry = carry;
            carry = next;
            factor *= 2.0;
        }
        table.push_back(carry);
    }
    return table.back();
}

// Fermi-type integral int_0^inf x/(e^{2 pi x/kappa}+1) dx = kappa^2/48 via
// the alternating series sum (-1)^{n+1}/n^2 = pi^2/12, summed with pairwise
// averaging of partial sums.
inline double fermi_moment(double kappa) {
    double s = 0.0, prev = 0.0;
    for (int n = 1; n <= 200001; ++n) {
        prev = s;
        s += (n % 2 ? 1.0 : -1.0) / (double(n) * n);
    }
    const double eta2 = 0.5 * (s + prev);
    return kappa * kappa / (4.0 * std::numbers::pi * std::numbers::pi) * eta2;
}

}  // namespace oracle
