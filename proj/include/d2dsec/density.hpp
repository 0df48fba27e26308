#pragma once

#include <optional>
#include <vector>

#include "d2dsec/link_budget.hpp"
#include "d2dsec/quadrature.hpp"

namespace d2dsec {

// A realization of the underlay set feeding one interference sum.
struct UnderlaySet {
    std::vector<int> members;              // D2D pair indices, ascending
    std::optional<int> excluded_pair;      // pair whose own receiver is the target
};

enum class DensityForm { empty, erlang, hypoexponential, numerical_grid };

// Density of a sum of independent exponential SNRs.
class SumDensity {
  public:
    static SumDensity empty();
    static SumDensity from_means(std::vector<double> means);
    // Numerical convolution regardless of the rate pattern (fallback path).
    static SumDensity grid_from_means(std::vector<double> means);

    DensityForm form() const { return form_; }
    const std::vector<double>& means() const { return means_; }

    // pdf of the sum; the empty form is a point mass at 0 (pdf intentionally 0).
    double pdf(double x) const;
    double mean() const;

  private:
    SumDensity() = default;

    DensityForm form_ = DensityForm::empty;
    std::vector<double> means_;            // gamma_k per member
    std::vector<double> coefficients_;     // hypoexponential partial fractions
    double erlang_rate_ = 0;
    int erlang_shape_ = 0;
    double grid_dx_ = 0;
    std::vector<double> grid_;             // sampled pdf for the fallback form
};

// Density of sum_k SNR_{D_k^t, target} over the set's members.
SumDensity sum_density(const UnderlaySet& set, NodeId target, const LinkBudget& budget);

// Moments about zero, k in {0, 1, 2}; closed-form from the member means.
double density_moment(const SumDensity& d, int k);

}  // namespace d2dsec
