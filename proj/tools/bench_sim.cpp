#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "d2dsec/errors.hpp"
#include "d2dsec/scenario_io.hpp"
#include "d2dsec/sim.hpp"

namespace {

using namespace d2dsec;

Scenario default_scenario() {
    Scenario sc;
    sc.topology.base_station = {0, 0};
    sc.topology.eavesdropper = {0, 200};
    sc.topology.cues = {{100, 100}, {150, 50}};
    sc.topology.d2d_pairs = {{{0, 150}, {10, 150}}, {{200, 0}, {250, 0}}, {{50, 250}, {50, 300}}};
    return sc;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool identical(const std::vector<SimEstimate>& a, const std::vector<SimEstimate>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].mean != b[i].mean || a[i].std_error != b[i].std_error) return false;
        if (a[i].batch_means != b[i].batch_means) return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Timing comparison of the serial and parallel simulation drivers"};
    std::string scenario_path;
    long long samples = 200000;
    int batches = 16;
    std::uint64_t seed = 1;
    int workers = 0;
    app.add_option("--scenario", scenario_path, "Scenario file (default: built-in 2-CUE 3-pair layout)");
    app.add_option("--samples", samples, "Samples per batch");
    app.add_option("--batches", batches, "Batch count");
    app.add_option("--seed", seed, "RNG seed");
    app.add_option("--workers", workers, "Worker threads for the parallel run (0 = all cores)");
    CLI11_PARSE(app, argc, argv);

    try {
        const Scenario scenario = scenario_path.empty() ? default_scenario() : load_scenario(scenario_path);
        validate(scenario);
        SimulationPlan plan;
        plan.samples_per_batch = samples;
        plan.batches = batches;
        plan.seed = seed;
        plan.parallelism = workers;

        auto start = std::chrono::steady_clock::now();
        const SimReport serial = simulate_serial(scenario, plan);
        const double serial_s = seconds_since(start);

        start = std::chrono::steady_clock::now();
        const SimReport parallel = simulate(scenario, plan);
        const double parallel_s = seconds_since(start);

        const bool match = identical(serial.cue_sop, parallel.cue_sop) &&
                           identical(serial.cue_asc, parallel.cue_asc) &&
                           identical(serial.pair_op, parallel.pair_op) &&
                           identical(serial.pair_ac, parallel.pair_ac);

        const double slots = static_cast<double>(samples) * batches;
        std::printf("serial:   %.3f s  (%.2f Mslots/s)\n", serial_s, slots / serial_s / 1e6);
        std::printf("parallel: %.3f s  (%.2f Mslots/s, speedup %.2fx)\n", parallel_s,
                    slots / parallel_s / 1e6, serial_s / parallel_s);
        std::printf("results bit-identical: %s\n", match ? "yes" : "NO");
        return match ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
