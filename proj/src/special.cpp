#include "d2dsec/special.hpp"

#include <cmath>
#include <limits>

#include "d2dsec/errors.hpp"

namespace d2dsec {

namespace {

constexpr double kEulerGamma = 0.57721566490153286;

// Power series for E1, accurate for 0 < x <= 1.
double e1_series(double x) {
    double sum = -kEulerGamma - std::log(x);
    double term = 1.0;
    for (int k = 1; k <= 60; ++k) {
        term *= -x / k;
        const double contrib = -term / k;
        sum += contrib;
        if (std::abs(contrib) < std::numeric_limits<double>::epsilon() * std::abs(sum)) break;
    }
    return sum;
}

// Modified Lentz continued fraction for e^x * E1(x), stable for x > 1.
// E1(x) = e^{-x} / (x + 1/(1 + 1/(x + 2/(1 + 2/(x + ...))))).
double e1_scaled_cf(double x) {
    constexpr double tiny = 1e-300;
    double b = x;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 200; ++i) {
        const double a = static_cast<double>(i);
        // Step with partial numerator a, partial denominator 1.
        b = 1.0;
        d = 1.0 / (b + a * d);
        c = b + a / c;
        double delta = c * d;
        h *= delta;
        // Step with partial numerator a, partial denominator x.
        b = x;
        d = 1.0 / (b + a * d);
        c = b + a / c;
        delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h;
}

}  // namespace

double exp_integral_e1(double x) {
    if (!(x > 0.0)) throw numerical_error("exp_integral_e1 requires x > 0");
    if (x <= 1.0) return e1_series(x);
    return std::exp(-x) * e1_scaled_cf(x);
}

double exp_integral_ei(double x) {
    if (!(x < 0.0)) throw numerical_error("exp_integral_ei requires x < 0");
    return -exp_integral_e1(-x);
}

double psi(double x) {
    if (!(x > 0.0)) throw numerical_error("psi requires x > 0");
    if (x <= 1.0) return std::exp(x) * exp_integral_ei(-x);
    // e^x overflows long before the continued fraction loses accuracy.
    return -e1_scaled_cf(x);
}

}  // namespace d2dsec
