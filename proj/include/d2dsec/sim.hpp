#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "d2dsec/metrics.hpp"
#include "d2dsec/model.hpp"

namespace d2dsec {

struct SimulationPlan {
    long long samples_per_batch = 1000000;
    int batches = 100;
    std::uint64_t seed = 1;
    int parallelism = 0;  // worker count hint; 0 = runtime default
};

struct SimEstimate {
    double mean = 0;
    double std_error = 0;  // std deviation of batch means / sqrt(batches)
    std::vector<double> batch_means;
};

struct SimReport {
    std::vector<SimEstimate> cue_sop;
    std::vector<SimEstimate> cue_asc;
    std::vector<SimEstimate> pair_op;
    std::vector<SimEstimate> pair_ac;

    MetricReport to_metric_report() const;
};

// Per-batch RNG stream: batch_seed = splitmix64(seed + (batch+1) * golden),
// exponential draws by inverse CDF. Identical results for any worker count.
SimReport simulate(const Scenario& scenario, const SimulationPlan& plan);

// Single-threaded reference driver; bit-identical to simulate().
SimReport simulate_serial(const Scenario& scenario, const SimulationPlan& plan);

// Raw batch means, columns batch,metric,entity_index,value.
void write_batch_csv(std::ostream& os, const SimReport& report);

enum class ProbeQuantity { sinr_cue_b, sinr_cue_e, sinr_d2d };

ProbeQuantity probe_from_string(const std::string& tag);

// Sorted per-slot samples of the probed quantity for entity index 0.
struct EmpiricalCdf {
    std::vector<double> samples;  // ascending

    double cdf(double x) const;
};

EmpiricalCdf empirical_cdf_probe(ProbeQuantity quantity, const Scenario& scenario, long long samples,
                                 std::uint64_t seed);

}  // namespace d2dsec
