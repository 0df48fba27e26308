#include "d2dsec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "d2dsec/errors.hpp"

namespace d2dsec {

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0,
};
constexpr double kWgk[8] = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679,  0.1903505780647854,  0.2044329400752989, 0.2094821410847278,
};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694,
};

struct Panel {
    double a = 0;
    double b = 0;
    double estimate = 0;
    double error = 0;
};

Panel g7k15(const Integrand1d& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double hlgth = 0.5 * (b - a);
    const double fc = f(centre);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    double fv[14];
    for (int j = 0; j < 7; ++j) {
        const double dx = hlgth * kXgk[j];
        const double f1 = f(centre - dx);
        const double f2 = f(centre + dx);
        fv[2 * j] = f1;
        fv[2 * j + 1] = f2;
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::abs(fv[2 * j] - reskh) + std::abs(fv[2 * j + 1] - reskh));
    }
    resabs *= std::abs(hlgth);
    resasc *= std::abs(hlgth);
    double err = std::abs((resk - resg) * hlgth);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    constexpr double uflow = std::numeric_limits<double>::min();
    constexpr double epmach = std::numeric_limits<double>::epsilon();
    if (resabs > uflow / (50.0 * epmach)) {
        err = std::max(epmach * 50.0 * resabs, err);
    }
    return {a, b, resk * hlgth, err};
}

}  // namespace

double integrate_finite(const Integrand1d& f, double a, double b, const QuadratureSpec& spec) {
    if (!(std::isfinite(a) && std::isfinite(b))) throw numerical_error("integration limits must be finite");
    if (a == b) return 0.0;
    if (a > b) return -integrate_finite(f, b, a, spec);

    std::vector<Panel> panels;
    panels.reserve(64);
    panels.push_back(g7k15(f, a, b));
    while (true) {
        double total = 0.0;
        double total_err = 0.0;
        for (const Panel& s : panels) {
            total += s.estimate;
            total_err += s.error;
        }
        if (!std::isfinite(total)) throw numerical_error("integrand produced a non-finite value");
        if (total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) return total;
        if (static_cast<int>(panels.size()) >= spec.max_subdivisions) {
            throw quadrature_error("quadrature did not converge within the subdivision cap", total);
        }
        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i) {
            if (panels[i].error > panels[worst].error) worst = i;
        }
        const Panel s = panels[worst];
        const double mid = 0.5 * (s.a + s.b);
        if (!(mid > s.a && mid < s.b)) {
            throw quadrature_error("interval too narrow to bisect", total);
        }
        panels[worst] = g7k15(f, s.a, mid);
        panels.push_back(g7k15(f, mid, s.b));
    }
}

double integrate_halfline(const Integrand1d& f, const QuadratureSpec& spec, double scale) {
    if (!(scale > 0.0) || !std::isfinite(scale)) throw numerical_error("halfline scale must be positive");
    const auto mapped = [&f, scale](double t) {
        const double om = 1.0 - t;
        return f(scale * t / om) * scale / (om * om);
    };
    return integrate_finite(mapped, 0.0, 1.0, spec);
}

double integrate_quadrant(const Integrand2d& f, const QuadratureSpec& spec, double scale_x, double scale_y) {
    QuadratureSpec inner = spec;
    inner.rel_tol = spec.rel_tol * 0.1;
    inner.abs_tol = spec.abs_tol * 0.1;
    const auto slice = [&](double y) {
        return integrate_halfline([&f, y](double x) { return f(x, y); }, inner, scale_x);
    };
    return integrate_halfline(slice, spec, scale_y);
}

}  // namespace d2dsec
