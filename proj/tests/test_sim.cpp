#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "d2dsec/errors.hpp"
#include "d2dsec/link_budget.hpp"
#include "d2dsec/metrics.hpp"
#include "d2dsec/model.hpp"
#include "d2dsec/sim.hpp"

using namespace d2dsec;

namespace {

Scenario single_pair_scenario() {
    Scenario sc;
    sc.topology.base_station = {0, 0};
    sc.topology.eavesdropper = {0, 300};
    sc.topology.cues = {{100, 100}};
    sc.topology.d2d_pairs = {{{0, 200}, {50, 200}}};
    sc.radio.p_cue_dbm = 23.010299956639813;
    return sc;
}

Scenario populated_scenario() {
    Scenario sc;
    sc.topology.base_station = {0, 0};
    sc.topology.eavesdropper = {0, 200};
    sc.topology.cues = {{100, 100}, {150, 60}};
    sc.topology.d2d_pairs = {{{100, 0}, {150, 50}}, {{0, 150}, {10, 150}}, {{200, 0}, {250, 0}}};
    sc.scheme.p = 0.4;
    sc.scheme.beta = 0.6;
    return sc;
}

bool same_estimates(const std::vector<SimEstimate>& a, const std::vector<SimEstimate>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].mean != b[i].mean) return false;
        if (a[i].std_error != b[i].std_error) return false;
        if (a[i].batch_means != b[i].batch_means) return false;
    }
    return true;
}

int count_lines(const std::string& text) {
    int lines = 0;
    for (char c : text) {
        if (c == '\n') ++lines;
    }
    return lines;
}

}  // namespace

TEST_CASE("same seed reproduces every batch") {
    const Scenario sc = populated_scenario();
    SimulationPlan plan;
    plan.samples_per_batch = 5000;
    plan.batches = 6;
    plan.seed = 42;
    const SimReport a = simulate(sc, plan);
    const SimReport b = simulate(sc, plan);
    CHECK(same_estimates(a.cue_sop, b.cue_sop));
    CHECK(same_estimates(a.cue_asc, b.cue_asc));
    CHECK(same_estimates(a.pair_op, b.pair_op));
    CHECK(same_estimates(a.pair_ac, b.pair_ac));

    std::ostringstream csv_a;
    std::ostringstream csv_b;
    write_batch_csv(csv_a, a);
    write_batch_csv(csv_b, b);
    CHECK(csv_a.str() == csv_b.str());
    // header plus one row per batch, metric, and entity
    CHECK(count_lines(csv_a.str()) == 1 + 6 * (2 * 2 + 2 * 3));

    plan.seed = 43;
    const SimReport c = simulate(sc, plan);
    CHECK(a.cue_asc[0].mean != c.cue_asc[0].mean);
}

TEST_CASE("parallel and serial drivers are bit-identical") {
    const Scenario sc = populated_scenario();
    SimulationPlan plan;
    plan.samples_per_batch = 20000;
    plan.batches = 8;
    plan.seed = 9;
    plan.parallelism = 4;
    const SimReport par = simulate(sc, plan);
    SimulationPlan serial_plan = plan;
    serial_plan.parallelism = 1;
    const SimReport ser = simulate_serial(sc, serial_plan);
    CHECK(same_estimates(par.cue_sop, ser.cue_sop));
    CHECK(same_estimates(par.cue_asc, ser.cue_asc));
    CHECK(same_estimates(par.pair_op, ser.pair_op));
    CHECK(same_estimates(par.pair_ac, ser.pair_ac));
}

TEST_CASE("a single slot yields indicator outcomes") {
    const Scenario sc = single_pair_scenario();
    SimulationPlan plan;
    plan.samples_per_batch = 1;
    plan.batches = 1;
    plan.seed = 5;
    const SimReport rep = simulate(sc, plan);
    const double sop = rep.cue_sop[0].mean;
    const double op = rep.pair_op[0].mean;
    CHECK((sop == 0.0 || sop == 1.0));
    CHECK((op == 0.0 || op == 1.0));
    CHECK(rep.cue_sop[0].std_error == 0.0);
    CHECK(rep.pair_ac[0].std_error == 0.0);
}

TEST_CASE("overlay starvation forces outage") {
    Scenario sc = single_pair_scenario();
    sc.scheme.p = 0.0;
    sc.scheme.beta = 1.0;
    SimulationPlan plan;
    plan.samples_per_batch = 2000;
    plan.batches = 4;
    plan.seed = 11;
    const SimReport rep = simulate(sc, plan);
    CHECK(rep.pair_op[0].mean == 1.0);
    CHECK(rep.pair_ac[0].mean == 0.0);
    CHECK(rep.pair_op[0].std_error == 0.0);
}

TEST_CASE("standard error shrinks with the batch count") {
    const Scenario sc = single_pair_scenario();
    SimulationPlan small;
    small.samples_per_batch = 4000;
    small.batches = 12;
    small.seed = 21;
    SimulationPlan large = small;
    large.batches = 48;
    const SimReport few = simulate(sc, small);
    const SimReport many = simulate(sc, large);
    const double ratio = few.cue_asc[0].std_error / many.cue_asc[0].std_error;
    CHECK(ratio > 1.4);
    CHECK(ratio < 2.6);
}

TEST_CASE("estimates agree with the analytic report at three sigma") {
    const Scenario sc = single_pair_scenario();
    const LinkBudget budget = link_budget(sc.topology, sc.radio, sc.scheme);
    const MetricReport exact = analytic_report(budget, sc.scheme);
    SimulationPlan plan;
    plan.samples_per_batch = 100000;
    plan.batches = 20;
    plan.seed = 1;
    const SimReport rep = simulate(sc, plan);
    const auto within = [](const SimEstimate& est, double ref) {
        return std::abs(est.mean - ref) <= 3.0 * est.std_error;
    };
    CHECK(within(rep.cue_sop[0], exact.per_cue[0].sop));
    CHECK(within(rep.cue_asc[0], exact.per_cue[0].asc));
    CHECK(within(rep.pair_op[0], exact.per_pair[0].op));
    CHECK(within(rep.pair_ac[0], exact.per_pair[0].ac));

    const MetricReport converted = rep.to_metric_report();
    CHECK(converted.source == MetricSource::simulated);
    REQUIRE(converted.cue_stderr.has_value());
    CHECK(converted.per_cue[0].sop == rep.cue_sop[0].mean);
    CHECK((*converted.pair_stderr)[0].op == rep.pair_op[0].std_error);
}

TEST_CASE("probed overlay SINR follows the link exponential") {
    Scenario sc = single_pair_scenario();
    sc.scheme.p = 0.0;
    const LinkBudget budget = link_budget(sc.topology, sc.radio, sc.scheme);
    const double g_ab = budget.cue_to_bs(0);
    const EmpiricalCdf ecdf = empirical_cdf_probe(ProbeQuantity::sinr_cue_b, sc, 100000, 3);
    REQUIRE(ecdf.samples.size() == 100000);
    double worst = 0.0;
    for (int k = 1; k <= 200; ++k) {
        const double x = g_ab * 0.025 * k;
        const double model = 1.0 - std::exp(-x / g_ab);
        worst = std::max(worst, std::abs(ecdf.cdf(x) - model));
    }
    CHECK(worst <= 0.006);
}

TEST_CASE("probe tags map to quantities") {
    CHECK(probe_from_string("sinr_cue_b") == ProbeQuantity::sinr_cue_b);
    CHECK(probe_from_string("sinr_cue_e") == ProbeQuantity::sinr_cue_e);
    CHECK(probe_from_string("sinr_d2d") == ProbeQuantity::sinr_d2d);
    CHECK_THROWS_AS(probe_from_string("snr"), usage_error);
}
