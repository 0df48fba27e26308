#pragma once

#include <functional>

namespace d2dsec {

struct QuadratureSpec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
};

using Integrand1d = std::function<double(double)>;
using Integrand2d = std::function<double(double, double)>;

// Globally adaptive Gauss-Kronrod 7/15 on [a, b].
double integrate_finite(const Integrand1d& f, double a, double b, const QuadratureSpec& spec = {});

// Integral over [0, inf) via x = scale t/(1-t); pick scale near the
// integrand's mass (e.g. the density mean) so the nodes land on it.
double integrate_halfline(const Integrand1d& f, const QuadratureSpec& spec = {}, double scale = 1.0);

// Iterated integral over [0, inf)^2, outer axis y, inner axis x.
double integrate_quadrant(const Integrand2d& f, const QuadratureSpec& spec = {}, double scale_x = 1.0,
                          double scale_y = 1.0);

}  // namespace d2dsec
