#pragma once

#include <string>
#include <vector>

#include "d2dsec/link_budget.hpp"
#include "d2dsec/metrics.hpp"
#include "d2dsec/model.hpp"

namespace d2dsec {

enum class Problem { p1, p2 };

struct GridSpec {
    int p_points = 1001;     // including both endpoints
    int beta_points = 1001;
    bool refine = true;      // golden-section pass to 1e-6 around the winner
};

struct Optimum {
    double p_star = 0;
    double beta_star = 0;
    bool beta_any = false;  // objective independent of beta at the optimum
    double objective = 0;
    std::string case_label;
};

// Linear-in-beta decomposition of the rate objective at the scheme's p:
// sum-ASC = (sum a_i beta + sum b_i)/(n ln 2), per-pair AC likewise from u, v, s.
struct P1Coefficients {
    std::vector<double> a;
    std::vector<double> b;
    std::vector<double> u;
    std::vector<double> v;
    std::vector<double> s;
};

struct FairnessValue {
    double value = 0;
    bool degenerate = false;  // a utility was non-positive; value is -inf
};

// Objective to maximize: P1 uses w_c ln(sum ASC) + w_d ln(sum AC); P2 is the
// negated form over summed SOP/OP.
FairnessValue fairness_objective(const MetricReport& report, double w_c, double w_d, Problem problem);

P1Coefficients p1_coefficients(const LinkBudget& budget, const SchemeConfig& scheme,
                               const QuadratureSpec& spec = {});

// Optimal beta at fixed p: 1 when sum(u+s) >= 0, else the clamped stationary point.
double p1_optimal_beta(const P1Coefficients& coeffs, double w_c, double w_d);

// Rate objectives as functions of (p, beta), for verification sweeps.
double p1_objective(const LinkBudget& budget, const SchemeConfig& scheme, double p, double beta,
                    const QuadratureSpec& spec = {});
double p2_objective(const LinkBudget& budget, const SchemeConfig& scheme, double p, double beta,
                    const QuadratureSpec& spec = {});

Optimum solve_p1(const LinkBudget& budget, const SchemeConfig& scheme, const GridSpec& grid = {},
                 const QuadratureSpec& spec = {});

// Closed-form solution keyed on mu + nu and the weighted gains; n = m = 1.
Optimum solve_p1_case_study(const LinkBudget& budget, const SchemeConfig& scheme);

Optimum solve_p2(const LinkBudget& budget, const SchemeConfig& scheme, const GridSpec& grid = {},
                 const QuadratureSpec& spec = {});

// p in {0, 1} by convexity; beta from the set where the weighted underlay
// security/reliability gain product stays below 1; n = m = 1.
Optimum solve_p2_case_study(const LinkBudget& budget, const SchemeConfig& scheme);

}  // namespace d2dsec
