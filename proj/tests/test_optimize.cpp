#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "d2dsec/case_study.hpp"
#include "d2dsec/errors.hpp"
#include "d2dsec/link_budget.hpp"
#include "d2dsec/metrics.hpp"
#include "d2dsec/model.hpp"
#include "d2dsec/optimize.hpp"
#include "oracles/reference_values.hpp"

using namespace d2dsec;

namespace {

constexpr double kLn2 = 0.6931471805599453;

RadioParams study_radio() {
    RadioParams radio;
    radio.p_cue_dbm = 23.010299956639813;  // 200 mW
    return radio;
}

Topology study_topology(Point tx, Point rx) {
    Topology topo;
    topo.base_station = {0, 0};
    topo.eavesdropper = {0, 300};
    topo.cues = {{100, 100}};
    topo.d2d_pairs = {{tx, rx}};
    return topo;
}

struct RandomCell {
    Topology topo;
    SchemeConfig scheme;
};

RandomCell draw_cell(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coord(-300.0, 300.0);
    std::uniform_real_distribution<double> offset(30.0, 120.0);
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    std::uniform_real_distribution<double> weight(0.1, 0.9);
    while (true) {
        RandomCell cell;
        cell.topo.base_station = {0, 0};
        cell.topo.cues = {{coord(rng), coord(rng)}};
        cell.topo.eavesdropper = {coord(rng), coord(rng)};
        const Point tx{coord(rng), coord(rng)};
        const double r = offset(rng);
        const double a = angle(rng);
        cell.topo.d2d_pairs = {{tx, {tx.x + r * std::cos(a), tx.y + r * std::sin(a)}}};
        cell.scheme.w_c = weight(rng);
        cell.scheme.w_d = 1.0 - cell.scheme.w_c;
        std::vector<Point> nodes{cell.topo.base_station, cell.topo.eavesdropper, cell.topo.cues[0],
                                 cell.topo.d2d_pairs[0].tx, cell.topo.d2d_pairs[0].rx};
        bool spread = true;
        for (std::size_t i = 0; i < nodes.size() && spread; ++i) {
            for (std::size_t k = i + 1; k < nodes.size(); ++k) {
                if (distance(nodes[i], nodes[k]) < 10.0) {
                    spread = false;
                    break;
                }
            }
        }
        if (spread) return cell;
    }
}

}  // namespace

TEST_CASE("fairness objective matches hand-computed values") {
    MetricReport rates;
    rates.per_cue = {{0.0, 0.5}, {0.0, 1.5}};
    rates.per_pair = {{0.0, 3.0}};
    const FairnessValue v1 = fairness_objective(rates, 0.4, 0.6, Problem::p1);
    CHECK_FALSE(v1.degenerate);
    CHECK(v1.value == doctest::Approx(0.4 * std::log(2.0) + 0.6 * std::log(3.0)).epsilon(1e-12));

    MetricReport outages;
    outages.per_cue = {{0.2, 0.0}, {0.3, 0.0}};
    outages.per_pair = {{0.25, 0.0}};
    const FairnessValue v2 = fairness_objective(outages, 0.4, 0.6, Problem::p2);
    CHECK_FALSE(v2.degenerate);
    CHECK(v2.value == doctest::Approx(-(0.4 * std::log(0.5) + 0.6 * std::log(0.25))).epsilon(1e-12));

    MetricReport flat;
    flat.per_cue = {{0.0, 0.0}};
    flat.per_pair = {{0.0, 2.0}};
    const FairnessValue v3 = fairness_objective(flat, 0.5, 0.5, Problem::p1);
    CHECK(v3.degenerate);
    CHECK(std::isinf(v3.value));
    CHECK(v3.value < 0.0);
}

TEST_CASE("rate metrics are linear in beta with the published coefficients") {
    Topology topo;
    topo.base_station = {0, 0};
    topo.eavesdropper = {0, 200};
    topo.cues = {{100, 100}, {150, 60}};
    topo.d2d_pairs = {{{100, 0}, {150, 50}}, {{0, 150}, {10, 150}}};
    SchemeConfig scheme;
    scheme.p = 0.37;
    const LinkBudget budget = link_budget(topo, RadioParams{}, scheme);
    const P1Coefficients c = p1_coefficients(budget, scheme);
    REQUIRE(c.a.size() == 2);
    REQUIRE(c.u.size() == 2);
    for (double beta : {0.0, 0.3, 1.0}) {
        SchemeConfig at = scheme;
        at.beta = beta;
        for (int i = 0; i < 2; ++i) {
            const double predicted = (c.a[i] * beta + c.b[i]) / (2 * kLn2);
            CHECK(asc_cue(i, budget, at) == doctest::Approx(predicted).epsilon(1e-8));
        }
        for (int j = 0; j < 2; ++j) {
            const double predicted = ((c.u[j] + c.s[j]) * beta + c.v[j] - c.s[j]) / kLn2;
            CHECK(ac_pair(j, budget, at) == doctest::Approx(predicted).epsilon(1e-8));
        }
    }
}

TEST_CASE("optimal beta branches on the pair-rate slope") {
    P1Coefficients up;
    up.a = {1.0};
    up.b = {1.0};
    up.u = {0.5};
    up.v = {0.0};
    up.s = {0.0};
    CHECK(p1_optimal_beta(up, 0.5, 0.5) == 1.0);

    P1Coefficients down;
    down.a = {1.0};
    down.b = {1.0};
    down.u = {-2.0};
    down.v = {1.0};
    down.s = {0.0};
    // stationary point: -w_d b/a - w_c (v - s)/(u + s)
    CHECK(p1_optimal_beta(down, 0.5, 0.5) == 0.0);
    CHECK(p1_optimal_beta(down, 1.0, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("vanishing underlay drives the partition to the cellular weight") {
    const LinkBudget budget = link_budget(study_topology({0, 200}, {50, 200}), study_radio(), SchemeConfig{});
    SchemeConfig scheme;
    scheme.p = 1e-8;
    scheme.w_c = 0.4;
    scheme.w_d = 0.6;
    const P1Coefficients c = p1_coefficients(budget, scheme);
    CHECK(std::abs(p1_optimal_beta(c, scheme.w_c, scheme.w_d) - scheme.w_c) <= 1e-6);
}

TEST_CASE("certain underlay makes the rate objective flat in beta") {
    const LinkBudget budget = link_budget(study_topology({0, 200}, {50, 200}), study_radio(), SchemeConfig{});
    SchemeConfig scheme;
    scheme.p = 1.0;
    const P1Coefficients c = p1_coefficients(budget, scheme);
    CHECK(c.a[0] == 0.0);
    CHECK(c.u[0] == 0.0);
    CHECK(c.s[0] == 0.0);
    CHECK(p1_objective(budget, scheme, 1.0, 0.25) == p1_objective(budget, scheme, 1.0, 0.75));
}

TEST_CASE("closed-form and grid solvers agree on the published panels") {
    const RadioParams radio = study_radio();
    struct Panel {
        Point tx;
        Point rx;
        double w_c;
    };
    const Panel panels[] = {
        {{0, 200}, {50, 200}, 0.4},
        {{0, 170}, {-50, 170}, 0.9},
        {{0, 200}, {50, 200}, 0.9},
        {{0, 150}, {50, 200}, 0.4},
    };
    for (int idx = 0; idx < 4; ++idx) {
        CAPTURE(idx);
        SchemeConfig scheme;
        scheme.w_c = panels[idx].w_c;
        scheme.w_d = 1.0 - panels[idx].w_c;
        const LinkBudget budget =
            link_budget(study_topology(panels[idx].tx, panels[idx].rx), radio, scheme);
        const Optimum closed = solve_p1_case_study(budget, scheme);
        const Optimum grid = solve_p1(budget, scheme);
        const reference::OptimumTarget& target = reference::kRateOptima[idx];
        CHECK(std::abs(closed.p_star - target.p_star) <= 1e-4);
        CHECK(std::abs(grid.p_star - target.p_star) <= 1e-4);
        CHECK(closed.beta_any == target.beta_any);
        CHECK(grid.beta_any == target.beta_any);
        if (!target.beta_any) {
            CHECK(std::abs(closed.beta_star - target.beta_star) <= 1e-4);
            CHECK(std::abs(grid.beta_star - target.beta_star) <= 1e-4);
        }
        CHECK(grid.objective == doctest::Approx(closed.objective).epsilon(1e-6));
    }
}

TEST_CASE("rate solvers agree across random single-pair cells") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 12; ++trial) {
        CAPTURE(trial);
        const RandomCell cell = draw_cell(rng);
        const LinkBudget budget = link_budget(cell.topo, RadioParams{}, cell.scheme);
        const Optimum closed = solve_p1_case_study(budget, cell.scheme);
        const Optimum grid = solve_p1(budget, cell.scheme);
        CHECK(grid.objective == doctest::Approx(closed.objective).epsilon(1e-6));

        const double mu = mu_gain(budget);
        const double nu = nu_gain(budget);
        const double split = cell.scheme.w_c / mu - cell.scheme.w_d / nu;
        const bool inside_case = std::abs(mu + nu - 1.0) > 0.05 &&
                                 std::abs(split) > 0.05 * (cell.scheme.w_c / mu + cell.scheme.w_d / nu);
        if (inside_case) {
            CHECK(std::abs(grid.p_star - closed.p_star) <= 1e-3);
            CHECK(grid.beta_any == closed.beta_any);
            if (!closed.beta_any) CHECK(std::abs(grid.beta_star - closed.beta_star) <= 1e-3);
        }
    }
}

TEST_CASE("outage solvers agree across random single-pair cells") {
    std::mt19937_64 rng(777);
    const GridSpec grid_spec{401, 401, true};
    for (int trial = 0; trial < 12; ++trial) {
        CAPTURE(trial);
        const RandomCell cell = draw_cell(rng);
        const LinkBudget budget = link_budget(cell.topo, RadioParams{}, cell.scheme);
        const Optimum closed = solve_p2_case_study(budget, cell.scheme);
        const Optimum grid = solve_p2(budget, cell.scheme, grid_spec);
        CHECK(grid.p_star == closed.p_star);
        CHECK(grid.beta_any == closed.beta_any);
        if (!closed.beta_any) CHECK(std::abs(grid.beta_star - closed.beta_star) <= 2e-3);
        CHECK(grid.objective == doctest::Approx(closed.objective).epsilon(1e-6));
    }
}

TEST_CASE("outage solver picks the published mode probabilities") {
    const RadioParams radio = study_radio();
    {
        SchemeConfig scheme;
        scheme.w_c = 0.4;
        scheme.w_d = 0.6;
        const LinkBudget budget = link_budget(study_topology({0, 250}, {50, 250}), radio, scheme);
        const Optimum closed = solve_p2_case_study(budget, scheme);
        CHECK(closed.p_star == reference::kOutagePanelAPStar);
        CHECK(closed.case_label == "rho-nonempty");
        const Optimum grid = solve_p2(budget, scheme);
        CHECK(grid.p_star == closed.p_star);
        CHECK(std::abs(grid.beta_star - closed.beta_star) <= 1e-3);
    }
    {
        SchemeConfig scheme;
        scheme.w_c = 0.9;
        scheme.w_d = 0.1;
        const LinkBudget budget = link_budget(study_topology({0, 250}, {50, 250}), radio, scheme);
        const Optimum closed = solve_p2_case_study(budget, scheme);
        CHECK(closed.p_star == reference::kOutagePanelBPStar);
        CHECK(closed.beta_any);
        CHECK(closed.case_label == "rho-empty");
        const Optimum grid = solve_p2(budget, scheme);
        CHECK(grid.p_star == 1.0);
        CHECK(grid.beta_any);
    }
}

TEST_CASE("the outage objective is convex in the mode probability") {
    SchemeConfig scheme;
    scheme.w_c = 0.4;
    scheme.w_d = 0.6;
    const LinkBudget budget = link_budget(study_topology({0, 250}, {50, 250}), study_radio(), scheme);
    for (double beta : {0.2, 0.5, 0.8}) {
        std::vector<double> values;
        for (int k = 0; k <= 20; ++k) {
            values.push_back(p2_objective(budget, scheme, k / 20.0, beta));
        }
        for (int k = 1; k < 20; ++k) {
            const double second = values[k - 1] - 2.0 * values[k] + values[k + 1];
            CHECK(second >= -1e-9);
        }
    }
}

TEST_CASE("no grid point beats the closed-form optimum") {
    const RadioParams radio = study_radio();
    SchemeConfig scheme;
    scheme.w_c = 0.4;
    scheme.w_d = 0.6;
    {
        const LinkBudget budget = link_budget(study_topology({0, 200}, {50, 200}), radio, scheme);
        const Optimum best = solve_p1_case_study(budget, scheme);
        for (int kp = 0; kp <= 200; ++kp) {
            for (int kb = 0; kb <= 200; ++kb) {
                SchemeConfig at = scheme;
                at.p = kp / 200.0;
                at.beta = kb / 200.0;
                const FairnessValue v = fairness_objective(case_study_metrics(budget, at).report,
                                                           scheme.w_c, scheme.w_d, Problem::p1);
                CHECK(v.value <= best.objective + 1e-9);
            }
        }
    }
    {
        const LinkBudget budget = link_budget(study_topology({0, 250}, {50, 250}), radio, scheme);
        const Optimum best = solve_p2_case_study(budget, scheme);
        for (int kp = 0; kp <= 200; ++kp) {
            for (int kb = 0; kb <= 200; ++kb) {
                SchemeConfig at = scheme;
                at.p = kp / 200.0;
                at.beta = kb / 200.0;
                const FairnessValue v = fairness_objective(case_study_metrics(budget, at).report,
                                                           scheme.w_c, scheme.w_d, Problem::p2);
                CHECK(v.value <= best.objective + 1e-9);
            }
        }
    }
}

TEST_CASE("rescaling a utility shifts the objective without moving the argmax") {
    const LinkBudget budget = link_budget(study_topology({0, 200}, {50, 200}), study_radio(), SchemeConfig{});
    SchemeConfig scheme;
    scheme.w_c = 0.4;
    scheme.w_d = 0.6;
    int best_plain = -1;
    int best_scaled = -1;
    double top_plain = -1e300;
    double top_scaled = -1e300;
    const double shift = scheme.w_c * std::log(3.0) + scheme.w_d * std::log(5.0);
    int index = 0;
    for (int kp = 0; kp <= 10; ++kp) {
        for (int kb = 0; kb <= 10; ++kb, ++index) {
            SchemeConfig at = scheme;
            at.p = kp / 10.0;
            at.beta = kb / 10.0;
            const MetricReport report = case_study_metrics(budget, at).report;
            MetricReport scaled = report;
            scaled.per_cue[0].asc *= 3.0;
            scaled.per_pair[0].ac *= 5.0;
            const double plain = fairness_objective(report, scheme.w_c, scheme.w_d, Problem::p1).value;
            const double boosted = fairness_objective(scaled, scheme.w_c, scheme.w_d, Problem::p1).value;
            // both sides are -inf at degenerate corners (zero cellular band at beta = 0)
            if (std::isfinite(plain)) {
                CHECK(boosted - plain == doctest::Approx(shift).epsilon(1e-12));
            } else {
                CHECK_FALSE(std::isfinite(boosted));
            }
            if (plain > top_plain) {
                top_plain = plain;
                best_plain = index;
            }
            if (boosted > top_scaled) {
                top_scaled = boosted;
                best_scaled = index;
            }
        }
    }
    CHECK(best_plain == best_scaled);
}

TEST_CASE("coarse grids still localize the optimum") {
    SchemeConfig scheme;
    scheme.w_c = 0.4;
    scheme.w_d = 0.6;
    const LinkBudget budget = link_budget(study_topology({0, 200}, {50, 200}), study_radio(), scheme);
    const Optimum closed = solve_p1_case_study(budget, scheme);
    const Optimum coarse = solve_p1(budget, scheme, GridSpec{101, 101, false});
    CHECK(std::abs(coarse.p_star - closed.p_star) <= 0.02);
    const Optimum refined = solve_p1(budget, scheme, GridSpec{101, 101, true});
    CHECK(std::abs(refined.p_star - closed.p_star) <= 1e-4);
}
