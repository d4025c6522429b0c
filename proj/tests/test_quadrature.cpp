#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "fdradiance/errors.hpp"
#include "fdradiance/quadrature.hpp"
#include "fdradiance/spectra.hpp"
#include "oracles.hpp"

using namespace fdradiance;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(Complex value, Complex reference) { return std::abs(value - reference) / std::abs(reference); }

}  // namespace

TEST_CASE("adaptive quadrature on elementary integrals") {
    const auto square = integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
    CHECK(std::fabs(square.value - 1.0 / 3.0) < 1e-15);
    CHECK(square.evaluations > 0);

    const auto decay = integrate_adaptive([](double x) { return std::exp(-x); }, 0.0, INFINITY, 1e-12);
    CHECK(std::fabs(decay.value - 1.0) < 1e-12);

    const auto cusp = integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-10);
    CHECK(std::fabs(cusp.value - 2.0 / 3.0) < 1e-10);
    CHECK(cusp.abs_error >= 0.0);

    const auto wave = integrate_adaptive_complex([](double x) { return std::exp(Complex(0.0, x)); }, 0.0, kPi, 1e-12);
    CHECK(std::abs(wave.value - Complex(0.0, 2.0)) < 1e-12);
}

TEST_CASE("Fermi integral over the half line") {
    for (double kappa : {0.5, 1.0, 2.0}) {
        AdaptiveOptions options;
        options.scale = kappa;
        const auto r = integrate_adaptive(
            [&](double w) { return w / (std::exp(2.0 * kPi * w / kappa) + 1.0); }, 0.0, INFINITY, 1e-12, options);
        CHECK(std::fabs(r.value - oracle::fermi_moment(kappa)) <= 1e-11 * r.value);
        CHECK(std::fabs(r.value - kappa * kappa / 48.0) <= 1e-11 * r.value);
    }
}

TEST_CASE("abs_floor accepts small absolute errors") {
    AdaptiveOptions loose;
    loose.abs_floor = 1e-3;
    const auto f = [](double x) { return std::sin(50.0 * x) * std::exp(-x); };
    const auto coarse = integrate_adaptive(f, 0.0, 10.0, 1e-14, loose);
    const auto fine = integrate_adaptive(f, 0.0, 10.0, 1e-14);
    CHECK(coarse.evaluations < fine.evaluations);
    CHECK(std::fabs(coarse.value - fine.value) <= 1e-3);
}

TEST_CASE("quadrature error reporting") {
    CHECK_THROWS_AS((void)integrate_adaptive([](double x) { return x; }, 1.0, 1.0, 1e-8), DomainError);
    CHECK_THROWS_AS((void)integrate_adaptive([](double x) { return x; }, 2.0, 1.0, 1e-8), DomainError);
    CHECK_THROWS_AS((void)integrate_adaptive([](double x) { return x; }, -INFINITY, 1.0, 1e-8), DomainError);
    CHECK_THROWS_AS((void)integrate_adaptive([](double x) { return 1.0 / (x - 0.5); }, 0.0, 1.0, 1e-8),
                    NonFiniteIntegrand);

    AdaptiveOptions tight;
    tight.max_evaluations = 200;
    try {
        (void)integrate_adaptive([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0, 1e-14, tight);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(std::isfinite(e.best_estimate().real()));
        CHECK(e.abs_error() > 0.0);
        CHECK(e.evaluations() <= 200 + 30);
        // int_0^1 sin(1/x) dx = 0.504067...
        CHECK(std::fabs(e.best_estimate().real() - 0.5040670619) < 0.1);
    }
}

TEST_CASE("property: integration is linear") {
    const auto f = [](double x) { return std::cos(3.0 * x) / (1.0 + x * x); };
    const auto g = [](double x) { return std::exp(-x * x) * x; };
    const double tol = 1e-11;
    for (double a : {-2.0, 0.5, 3.0}) {
        for (double b : {-1.0, 0.25, 7.0}) {
            const double lhs =
                integrate_adaptive([&](double x) { return a * f(x) + b * g(x); }, -1.0, 4.0, tol).value;
            const double fv = integrate_adaptive(f, -1.0, 4.0, tol).value;
            const double gv = integrate_adaptive(g, -1.0, 4.0, tol).value;
            const double rhs = a * fv + b * gv;
            CHECK(std::fabs(lhs - rhs) <= tol * (std::fabs(a * fv) + std::fabs(b * gv)) * 10.0);
        }
    }
}

TEST_CASE("property: halving tol never increases the true error") {
    struct Case {
        std::function<double(double)> f;
        double lo, hi, exact;
        double l1;  // int |f|, the scale of rounding in the sum
    };
    const Case cases[] = {
        {[](double x) { return std::exp(x); }, 0.0, 1.0, std::exp(1.0) - 1.0, 1.72},
        {[](double x) { return 1.0 / (1.0 + x * x); }, -5.0, 5.0, 2.0 * std::atan(5.0), 2.75},
        {[](double x) { return std::cos(20.0 * x); }, 0.0, 2.0, std::sin(40.0) / 20.0, 1.28},
        {[](double x) { return std::sqrt(x); }, 0.0, 2.0, 2.0 / 3.0 * std::pow(2.0, 1.5), 1.89},
        {[](double x) { return std::log(x); }, 0.0, 1.0, -1.0, 1.0},
    };
    for (const auto& c : cases) {
        double previous = INFINITY;
        for (double tol = 1e-3; tol >= 1e-12; tol *= 0.5) {
            const auto r = integrate_adaptive(c.f, c.lo, c.hi, tol);
            const double err = std::fabs(r.value - c.exact);
            // Differences at the last few ulps are rounding, not truncation.
            const double rounding = 8.0 * std::numeric_limits<double>::epsilon() * c.l1;
            CHECK(err <= previous + rounding);
            CHECK(err <= r.abs_error + rounding);
            previous = err;
        }
    }
}

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
    for (std::size_t n : {1u, 2u, 5u, 16u, 64u, 257u}) {
        const auto& rule = gauss_legendre(n);
        REQUIRE(rule.nodes.size() == n);
        double weights = 0.0;
        for (double w : rule.weights) weights += w;
        CHECK(std::fabs(weights - 2.0) < 1e-13);
        for (std::size_t degree = 0; degree < 2 * n; degree += std::max<std::size_t>(1, n / 4)) {
            double sum = 0.0;
            for (std::size_t k = 0; k < n; ++k) sum += rule.weights[k] * std::pow(rule.nodes[k], double(degree));
            const double exact = degree % 2 ? 0.0 : 2.0 / double(degree + 1);
            CHECK(std::fabs(sum - exact) < 1e-13);
        }
    }
    CHECK(&gauss_legendre(16) == &gauss_legendre(16));
}

TEST_CASE("Fresnel integral on the rotated ray") {
    const Complex expected = std::sqrt(kPi) / 2.0 * std::polar(1.0, kPi / 4.0);
    const auto r = integrate_oscillatory({1.0, 0.0, 0.0}, 1e-12);
    CHECK(rel(r.value, expected) < 1e-12);
    CHECK(std::fabs(r.value.real() - 0.6267) < 1e-4);
    CHECK(r.abs_error <= 1e-10);
    // Same quantity from the damped real-axis oracle.
    CHECK(rel(oracle::damped_limit({1.0, 0.0, 0.0}, 0.1), expected) < 1e-6);
}

TEST_CASE("oscillatory integrals with a linear term match the damped oracle") {
    for (double b : {-3.0, -0.5, 0.7, 2.0}) {
        const OscillatoryPhaseSpec spec{0.5, 0.0, b};
        CHECK(rel(integrate_oscillatory(spec, 1e-10).value, oracle::damped_limit(spec, 0.1)) < 1e-4);
    }
}

TEST_CASE("property: result does not depend on the rotation angle") {
    const double tol = 1e-9;
    std::vector<OscillatoryPhaseSpec> specs = {{1.0, 0.0, 0.0}, {0.25, 2.0, 0.0}, {1.0, 8.0, -2.0}};
    for (double y : {0.25, 1.0, 4.0}) {
        for (double theta : {kPi / 6, kPi / 2, 5 * kPi / 6}) {
            specs.push_back(phase_spec(TrajectoryParams(1.0, 0.0, 1.0), y, EmissionDirection(theta)));
        }
    }
    for (const auto& spec : specs) {
        std::vector<Complex> values;
        for (double delta : {kPi / 8, kPi / 6, kPi / 4}) {
            OscillatoryOptions options;
            options.rotation = delta;
            values.push_back(integrate_oscillatory(spec, tol, options).value);
        }
        CAPTURE(spec.quad_coeff);
        CAPTURE(spec.log_coeff);
        CAPTURE(spec.lin_coeff);
        for (std::size_t i = 0; i < values.size(); ++i) {
            for (std::size_t j = i + 1; j < values.size(); ++j) CHECK(rel(values[i], values[j]) <= 10.0 * tol);
        }
    }
}

TEST_CASE("property: contour rotation agrees with the damped real-axis oracle") {
    const TrajectoryParams params(1.0, 0.0, 1.0);
    double worst = 0.0;
    for (double y : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        for (double theta : {kPi / 6, kPi / 3, kPi / 2, 2 * kPi / 3, 5 * kPi / 6}) {
            const auto spec = phase_spec(params, y, EmissionDirection(theta));
            worst = std::max(worst, rel(integrate_oscillatory(spec, 1e-10).value, oracle::damped_limit(spec, 0.1)));
        }
    }
    CHECK(worst <= 1e-4);
}

TEST_CASE("oscillatory integration is deterministic") {
    const OscillatoryPhaseSpec spec{0.25, 2.0, -0.3};
    const auto a = integrate_oscillatory(spec, 1e-10);
    const auto b = integrate_oscillatory(spec, 1e-10);
    CHECK(a.value == b.value);
    CHECK(a.abs_error == b.abs_error);
    CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("oscillatory specification is validated") {
    CHECK_THROWS_AS((void)integrate_oscillatory({0.0, 1.0, 0.0}, 1e-8), DomainError);
    CHECK_THROWS_AS((void)integrate_oscillatory({-1.0, 1.0, 0.0}, 1e-8), DomainError);
    CHECK_THROWS_AS((void)integrate_oscillatory({1.0, -1.0, 0.0}, 1e-8), DomainError);
    CHECK_THROWS_AS((void)integrate_oscillatory({1.0, 0.0, 0.0}, 0.0), DomainError);
    const double delta = default_rotation({0.25, 2.0, 0.0});
    CHECK(delta >= kMinRotation);
    CHECK(delta <= kMaxRotation);
}
