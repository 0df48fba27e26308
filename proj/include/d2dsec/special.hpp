#pragma once

namespace d2dsec {

// E1(x) for x > 0: series below the crossover, continued fraction above.
double exp_integral_e1(double x);

// Ei(x) for x < 0 only; relative error <= 1e-12 over |x| in [1e-6, 700].
double exp_integral_ei(double x);

// psi(x) = e^x Ei(-x) for x > 0, evaluated without overflow for large x.
double psi(double x);

}  // namespace d2dsec
