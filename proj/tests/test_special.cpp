#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "d2dsec/errors.hpp"
#include "d2dsec/quadrature.hpp"
#include "d2dsec/special.hpp"
#include "oracles/oracle_values.hpp"

using namespace d2dsec;

namespace {

double rel_err(double value, double reference) {
    return std::abs(value - reference) / std::abs(reference);
}

}  // namespace

TEST_CASE("exponential integral matches the frozen references") {
    for (const auto& point : oracles::kEiTable) {
        CHECK(rel_err(exp_integral_ei(point.x), point.ei) <= 1e-12);
    }
}

TEST_CASE("exponential integral decays towards zero") {
    CHECK(std::abs(exp_integral_ei(-50.0)) < 1e-20);
    CHECK(std::abs(exp_integral_ei(-1.0)) < std::abs(exp_integral_ei(-0.5)));
    CHECK(exp_integral_ei(-1.0) < 0.0);
    CHECK(exp_integral_ei(-0.5) < 0.0);
}

TEST_CASE("exponential integral rejects the non-negative axis") {
    CHECK_THROWS_AS(exp_integral_ei(0.0), numerical_error);
    CHECK_THROWS_AS(exp_integral_ei(1.0), numerical_error);
}

TEST_CASE("psi matches the frozen references") {
    CHECK(rel_err(psi(0.5), oracles::kPsiHalf) <= 1e-12);
    CHECK(rel_err(psi(1.0), oracles::kPsiOne) <= 1e-12);
    CHECK(rel_err(psi(2.0), oracles::kPsiTwo) <= 1e-12);
}

TEST_CASE("psi is negative, increasing, and pinched between -1/x and -1/(x+1)") {
    CHECK(psi(0.5) < psi(1.0));
    CHECK(psi(1.0) < psi(2.0));
    CHECK(psi(2.0) < 0.0);
    CHECK(psi(50.0) > -0.02);
    CHECK(psi(50.0) < 0.0);

    double prev_psi = psi(0.01);
    for (double x = 0.012; x <= 100.0; x *= 1.2) {
        const double value = psi(x);
        CHECK(value < 0.0);
        CHECK(value > -1.0 / x);
        CHECK(value < -1.0 / (x + 1.0));
        CHECK(value > prev_psi);
        prev_psi = value;
    }
}

TEST_CASE("psi rejects the non-positive axis") {
    CHECK_THROWS_AS(psi(0.0), numerical_error);
    CHECK_THROWS_AS(psi(-1.0), numerical_error);
}

TEST_CASE("half-line quadrature integrates analytic references") {
    const QuadratureSpec spec;
    CHECK(rel_err(integrate_halfline([](double x) { return std::exp(-x); }, spec), 1.0) <= 1e-9);
    CHECK(rel_err(integrate_halfline([](double x) { return x * std::exp(-x); }, spec), 1.0) <= 1e-9);
    CHECK(rel_err(integrate_halfline([](double x) { return std::exp(-x) / (1.0 + x); }, spec),
                  oracles::kExpOverOnePlusX) <= 1e-9);
}

TEST_CASE("half-line quadrature honors the scale hint") {
    const QuadratureSpec spec;
    for (double scale : {1e-4, 1.0, 1e5}) {
        const double value =
            integrate_halfline([scale](double x) { return std::exp(-x / scale) / scale; }, spec, scale);
        CHECK(rel_err(value, 1.0) <= 1e-9);
    }
}

TEST_CASE("finite quadrature handles orientation and degenerate ranges") {
    const QuadratureSpec spec;
    const auto f = [](double x) { return std::sin(x); };
    const double forward = integrate_finite(f, 0.0, 3.141592653589793, spec);
    CHECK(rel_err(forward, 2.0) <= 1e-9);
    CHECK(integrate_finite(f, 1.0, 1.0, spec) == 0.0);
    CHECK(integrate_finite(f, 3.141592653589793, 0.0, spec) == doctest::Approx(-forward).epsilon(1e-12));
}

TEST_CASE("quadrant quadrature integrates separable products") {
    const QuadratureSpec spec;
    CHECK(rel_err(integrate_quadrant([](double x, double y) { return std::exp(-x - y); }, spec), 1.0) <=
          1e-8);
    CHECK(rel_err(integrate_quadrant([](double x, double y) { return x * y * std::exp(-x - y); }, spec),
                  1.0) <= 1e-8);
    // Product of two half-line results for a kernel-shaped integrand.
    const double one_dim_a =
        integrate_halfline([](double x) { return std::exp(-2.0 * x) / (1.0 + x); }, spec);
    const double one_dim_b = integrate_halfline([](double y) { return std::exp(-y) / (1.0 + y); }, spec);
    const double two_dim = integrate_quadrant(
        [](double x, double y) { return std::exp(-2.0 * x - y) / ((1.0 + x) * (1.0 + y)); }, spec);
    CHECK(rel_err(two_dim, one_dim_a * one_dim_b) <= 1e-8);
}

TEST_CASE("quadrature is deterministic") {
    const QuadratureSpec spec;
    const auto f = [](double x) { return std::exp(-x) * std::cos(3.0 * x); };
    const double first = integrate_halfline(f, spec);
    const double second = integrate_halfline(f, spec);
    CHECK(first == second);
}

TEST_CASE("subdivision cap raises a quadrature error with a partial estimate") {
    QuadratureSpec spec;
    spec.max_subdivisions = 1;
    spec.rel_tol = 1e-14;
    spec.abs_tol = 1e-300;
    const auto f = [](double x) { return std::sin(50.0 * x) * std::sin(50.0 * x); };
    try {
        integrate_finite(f, 0.0, 20.0, spec);
        FAIL("expected quadrature_error");
    } catch (const quadrature_error& e) {
        CHECK(std::isfinite(e.partial()));
        CHECK(e.partial() > 0.0);
    }
}
