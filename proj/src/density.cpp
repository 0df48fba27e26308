#include "d2dsec/density.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>

#include "d2dsec/errors.hpp"

namespace d2dsec {

namespace {

constexpr double kNearEqualRel = 1e-6;  // partial fractions blow up below this
constexpr int kGridPoints = 1 << 14;

bool near_equal(double a, double b) {
    return std::abs(a - b) <= kNearEqualRel * std::max(std::abs(a), std::abs(b));
}

void check_means(const std::vector<double>& means) {
    for (double g : means) {
        if (!(g > 0) || !std::isfinite(g)) throw numerical_error("member mean SNR must be positive");
    }
}

}  // namespace

SumDensity SumDensity::empty() {
    return SumDensity{};
}

SumDensity SumDensity::from_means(std::vector<double> means) {
    if (means.empty()) return empty();
    check_means(means);

    bool all_equal = true;
    bool any_equal = false;
    for (std::size_t i = 0; i < means.size(); ++i) {
        for (std::size_t j = i + 1; j < means.size(); ++j) {
            const bool eq = near_equal(1.0 / means[i], 1.0 / means[j]);
            all_equal = all_equal && eq;
            any_equal = any_equal || eq;
        }
    }

    if (all_equal) {
        SumDensity d;
        d.form_ = DensityForm::erlang;
        d.erlang_shape_ = static_cast<int>(means.size());
        d.erlang_rate_ = d.erlang_shape_ / std::accumulate(means.begin(), means.end(), 0.0);
        d.means_ = std::move(means);
        return d;
    }
    if (any_equal) return grid_from_means(std::move(means));

    SumDensity d;
    d.form_ = DensityForm::hypoexponential;
    d.coefficients_.resize(means.size());
    for (std::size_t k = 0; k < means.size(); ++k) {
        double w = 1.0;
        const double lk = 1.0 / means[k];
        for (std::size_t j = 0; j < means.size(); ++j) {
            if (j == k) continue;
            const double lj = 1.0 / means[j];
            w *= lj / (lj - lk);
        }
        d.coefficients_[k] = w;
    }
    d.means_ = std::move(means);
    return d;
}

SumDensity SumDensity::grid_from_means(std::vector<double> means) {
    if (means.empty()) return empty();
    check_means(means);

    double mu = 0;
    double var = 0;
    for (double g : means) {
        mu += g;
        var += g * g;
    }
    const double xmax = mu + 25.0 * std::sqrt(var);  // tail mass beyond this is < 1e-10
    const double dx = xmax / (kGridPoints - 1);

    std::vector<double> cur(kGridPoints);
    {
        const double l0 = 1.0 / means[0];
        for (int i = 0; i < kGridPoints; ++i) cur[i] = l0 * std::exp(-l0 * i * dx);
    }
    std::vector<double> decay(kGridPoints);
    std::vector<double> nxt(kGridPoints);
    for (std::size_t k = 1; k < means.size(); ++k) {
        const double lk = 1.0 / means[k];
        for (int i = 0; i < kGridPoints; ++i) decay[i] = lk * std::exp(-lk * i * dx);
        nxt[0] = 0.0;
        nxt[1] = 0.5 * (cur[0] * decay[1] + cur[1] * decay[0]) * dx;
        for (int i = 2; i < kGridPoints; ++i) {
            const double g0 = cur[0] * decay[i];
            const double g1 = cur[1] * decay[i - 1];
            const double gn1 = cur[i - 1] * decay[1];
            const double gn = cur[i] * decay[0];
            double acc = 0.5 * (g0 + gn);
            for (int j = 1; j < i; ++j) acc += cur[j] * decay[i - j];
            // trapezoid plus Gregory end corrections; without them the grid mean
            // drifts past the 1e-6 contract
            acc -= ((gn - gn1) - (g1 - g0)) / 12.0;
            if (i >= 3) {
                const double g2 = cur[2] * decay[i - 2];
                const double gn2 = cur[i - 2] * decay[2];
                acc -= ((gn - 2.0 * gn1 + gn2) + (g2 - 2.0 * g1 + g0)) / 24.0;
            } else {
                acc -= (gn - 2.0 * g1 + g0) / 12.0;
            }
            nxt[i] = acc * dx;
        }
        cur.swap(nxt);
    }

    SumDensity d;
    d.form_ = DensityForm::numerical_grid;
    d.grid_dx_ = dx;
    d.grid_ = std::move(cur);
    d.means_ = std::move(means);
    return d;
}

double SumDensity::pdf(double x) const {
    if (x < 0) return 0.0;
    switch (form_) {
        case DensityForm::empty:
            return 0.0;
        case DensityForm::erlang: {
            const int k = erlang_shape_;
            const double l = erlang_rate_;
            if (k == 1) return l * std::exp(-l * x);
            if (x == 0) return 0.0;
            return std::exp(k * std::log(l) + (k - 1) * std::log(x) - l * x - std::lgamma(k));
        }
        case DensityForm::hypoexponential: {
            double acc = 0;
            for (std::size_t i = 0; i < means_.size(); ++i) {
                const double l = 1.0 / means_[i];
                acc += coefficients_[i] * l * std::exp(-l * x);
            }
            return acc;
        }
        case DensityForm::numerical_grid: {
            const double pos = x / grid_dx_;
            const auto i = static_cast<std::size_t>(pos);
            if (i + 1 >= grid_.size()) return 0.0;
            const double frac = pos - static_cast<double>(i);
            return grid_[i] + frac * (grid_[i + 1] - grid_[i]);
        }
    }
    return 0.0;
}

double SumDensity::mean() const {
    return std::accumulate(means_.begin(), means_.end(), 0.0);
}

SumDensity sum_density(const UnderlaySet& set, NodeId target, const LinkBudget& budget) {
    std::vector<double> means;
    means.reserve(set.members.size());
    for (int k : set.members) {
        if (set.excluded_pair && *set.excluded_pair == k) {
            throw usage_error("excluded pair listed among the underlay members");
        }
        means.push_back(budget.at(d2d_tx(k), target));
    }
    return SumDensity::from_means(std::move(means));
}

double density_moment(const SumDensity& d, int k) {
    double sum = 0;
    double sum_sq = 0;
    for (double g : d.means()) {
        sum += g;
        sum_sq += g * g;
    }
    switch (k) {
        case 0:
            return 1.0;
        case 1:
            return sum;
        case 2:
            return sum_sq + sum * sum;
        default:
            throw usage_error("moment order must be 0, 1 or 2");
    }
}

}  // namespace d2dsec
