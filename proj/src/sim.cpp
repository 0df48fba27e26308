#include "d2dsec/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "d2dsec/errors.hpp"
#include "d2dsec/link_budget.hpp"

namespace d2dsec {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t batch_seed(std::uint64_t seed, int batch) {
    return splitmix64(seed + static_cast<std::uint64_t>(batch + 1) * kGolden);
}

double u01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

double draw_exp(std::mt19937_64& eng, double mean) {
    return -mean * std::log1p(-u01(eng));
}

// Mean-SNR tables flattened out of the link-budget map for the hot loop.
struct SimContext {
    int n = 0;
    int m = 0;
    double p = 0;
    double beta = 0;
    double r_s = 0;
    double r_t = 0;
    std::vector<double> cue_b, cue_e;  // n
    std::vector<double> d2d_b, d2d_e;  // m
    std::vector<double> d2d_rx;        // m*m, [tx*m + rx]
    std::vector<double> cue_rx;        // n*m, [cue*m + rx]
};

SimContext make_context(const Scenario& scenario) {
    validate(scenario);
    const LinkBudget budget = link_budget(scenario.topology, scenario.radio, scenario.scheme);
    SimContext ctx;
    ctx.n = budget.n;
    ctx.m = budget.m;
    ctx.p = scenario.scheme.p;
    ctx.beta = scenario.scheme.beta;
    ctx.r_s = scenario.scheme.r_s;
    ctx.r_t = scenario.scheme.r_t;
    for (int i = 0; i < ctx.n; ++i) {
        ctx.cue_b.push_back(budget.cue_to_bs(i));
        ctx.cue_e.push_back(budget.cue_to_eve(i));
    }
    for (int k = 0; k < ctx.m; ++k) {
        ctx.d2d_b.push_back(budget.d2d_to_bs(k));
        ctx.d2d_e.push_back(budget.d2d_to_eve(k));
    }
    for (int k = 0; k < ctx.m; ++k) {
        for (int j = 0; j < ctx.m; ++j) ctx.d2d_rx.push_back(budget.d2d_to_rx(k, j));
    }
    for (int i = 0; i < ctx.n; ++i) {
        for (int j = 0; j < ctx.m; ++j) ctx.cue_rx.push_back(budget.cue_to_rx(i, j));
    }
    return ctx;
}

// One slot's channel state, drawn in a fixed order so every slot consumes
// the same number of variates: modes, reuse picks, CUE gains to B then E,
// D2D-transmitter gains to B then E, the m x m D2D matrix, the n x m CUE
// cross-gains.
struct SlotState {
    std::vector<int> underlay;  // 0/1 per pair
    std::vector<int> pick;      // reused CUE per pair
    std::vector<double> cue_b, cue_e;
    std::vector<double> d2d_b, d2d_e;
    std::vector<double> d2d_rx;
    std::vector<double> cue_rx;
    std::vector<double> noise_b, noise_e;  // aggregate underlay interference

    explicit SlotState(const SimContext& ctx)
        : underlay(ctx.m),
          pick(ctx.m),
          cue_b(ctx.n),
          cue_e(ctx.n),
          d2d_b(ctx.m),
          d2d_e(ctx.m),
          d2d_rx(ctx.m * ctx.m),
          cue_rx(ctx.n * ctx.m),
          noise_b(ctx.n),
          noise_e(ctx.n) {}
};

void draw_slot(const SimContext& ctx, std::mt19937_64& eng, SlotState& s) {
    for (int j = 0; j < ctx.m; ++j) s.underlay[j] = u01(eng) < ctx.p ? 1 : 0;
    for (int j = 0; j < ctx.m; ++j) {
        s.pick[j] = std::min(ctx.n - 1, static_cast<int>(u01(eng) * ctx.n));
    }
    for (int i = 0; i < ctx.n; ++i) s.cue_b[i] = draw_exp(eng, ctx.cue_b[i]);
    for (int i = 0; i < ctx.n; ++i) s.cue_e[i] = draw_exp(eng, ctx.cue_e[i]);
    for (int k = 0; k < ctx.m; ++k) s.d2d_b[k] = draw_exp(eng, ctx.d2d_b[k]);
    for (int k = 0; k < ctx.m; ++k) s.d2d_e[k] = draw_exp(eng, ctx.d2d_e[k]);
    for (int e = 0; e < ctx.m * ctx.m; ++e) s.d2d_rx[e] = draw_exp(eng, ctx.d2d_rx[e]);
    for (int e = 0; e < ctx.n * ctx.m; ++e) s.cue_rx[e] = draw_exp(eng, ctx.cue_rx[e]);
}

struct BatchAccum {
    std::vector<double> sop, asc, op, ac;

    BatchAccum(int n, int m) : sop(n), asc(n), op(m), ac(m) {}
};

void run_slot(const SimContext& ctx, SlotState& s, BatchAccum& acc) {
    int overlay_count = 0;
    for (int j = 0; j < ctx.m; ++j) overlay_count += 1 - s.underlay[j];
    const double beta_eff = overlay_count == 0 ? 1.0 : ctx.beta;
    const double cue_share = beta_eff / ctx.n;
    const double overlay_share = overlay_count > 0 ? (1.0 - ctx.beta) / overlay_count : 0.0;

    std::fill(s.noise_b.begin(), s.noise_b.end(), 1.0);
    std::fill(s.noise_e.begin(), s.noise_e.end(), 1.0);
    for (int j = 0; j < ctx.m; ++j) {
        if (!s.underlay[j]) continue;
        s.noise_b[s.pick[j]] += s.d2d_b[j];
        s.noise_e[s.pick[j]] += s.d2d_e[j];
    }

    for (int i = 0; i < ctx.n; ++i) {
        const double ratio = (1.0 + s.cue_b[i] / s.noise_b[i]) / (1.0 + s.cue_e[i] / s.noise_e[i]);
        const double diff = cue_share * std::log2(ratio);
        if (diff < ctx.r_s) acc.sop[i] += 1.0;
        if (diff > 0.0) acc.asc[i] += diff;
    }

    for (int j = 0; j < ctx.m; ++j) {
        double cap;
        if (s.underlay[j]) {
            const int c = s.pick[j];
            double interference = 1.0 + s.cue_rx[c * ctx.m + j];
            for (int k = 0; k < ctx.m; ++k) {
                if (k != j && s.underlay[k] && s.pick[k] == c) {
                    interference += s.d2d_rx[k * ctx.m + j];
                }
            }
            cap = cue_share * std::log2(1.0 + s.d2d_rx[j * ctx.m + j] / interference);
        } else {
            cap = overlay_share * std::log2(1.0 + s.d2d_rx[j * ctx.m + j]);
        }
        if (cap < ctx.r_t) acc.op[j] += 1.0;
        acc.ac[j] += cap;
    }
}

SimEstimate finalize(std::vector<double> batch_means) {
    SimEstimate est;
    const auto count = static_cast<double>(batch_means.size());
    est.mean = std::accumulate(batch_means.begin(), batch_means.end(), 0.0) / count;
    if (batch_means.size() > 1) {
        double ss = 0;
        for (double v : batch_means) ss += (v - est.mean) * (v - est.mean);
        est.std_error = std::sqrt(ss / (count - 1.0) / count);
    }
    est.batch_means = std::move(batch_means);
    return est;
}

SimReport run(const Scenario& scenario, const SimulationPlan& plan, bool parallel) {
    if (plan.samples_per_batch < 1 || plan.batches < 1) {
        throw usage_error("simulation plan needs at least one sample and one batch");
    }
    const SimContext ctx = make_context(scenario);
    const int batches = plan.batches;
    // means[entity][batch], entities ordered sop | asc | op | ac
    std::vector<std::vector<double>> means(2 * ctx.n + 2 * ctx.m, std::vector<double>(batches));

    int threads = 1;
#ifdef _OPENMP
    threads = plan.parallelism > 0 ? plan.parallelism : omp_get_max_threads();
#endif
    (void)threads;
    (void)parallel;

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (parallel)
#endif
    for (int b = 0; b < batches; ++b) {
        std::mt19937_64 eng(batch_seed(plan.seed, b));
        SlotState state(ctx);
        BatchAccum acc(ctx.n, ctx.m);
        for (long long slot = 0; slot < plan.samples_per_batch; ++slot) {
            draw_slot(ctx, eng, state);
            run_slot(ctx, state, acc);
        }
        const auto samples = static_cast<double>(plan.samples_per_batch);
        for (int i = 0; i < ctx.n; ++i) {
            means[i][b] = acc.sop[i] / samples;
            means[ctx.n + i][b] = acc.asc[i] / samples;
        }
        for (int j = 0; j < ctx.m; ++j) {
            means[2 * ctx.n + j][b] = acc.op[j] / samples;
            means[2 * ctx.n + ctx.m + j][b] = acc.ac[j] / samples;
        }
    }

    SimReport report;
    for (int i = 0; i < ctx.n; ++i) report.cue_sop.push_back(finalize(std::move(means[i])));
    for (int i = 0; i < ctx.n; ++i) report.cue_asc.push_back(finalize(std::move(means[ctx.n + i])));
    for (int j = 0; j < ctx.m; ++j) report.pair_op.push_back(finalize(std::move(means[2 * ctx.n + j])));
    for (int j = 0; j < ctx.m; ++j) {
        report.pair_ac.push_back(finalize(std::move(means[2 * ctx.n + ctx.m + j])));
    }
    return report;
}

}  // namespace

MetricReport SimReport::to_metric_report() const {
    MetricReport out;
    out.source = MetricSource::simulated;
    std::vector<CueMetrics> cue_err;
    std::vector<PairMetrics> pair_err;
    for (std::size_t i = 0; i < cue_sop.size(); ++i) {
        out.per_cue.push_back({cue_sop[i].mean, cue_asc[i].mean});
        cue_err.push_back({cue_sop[i].std_error, cue_asc[i].std_error});
    }
    for (std::size_t j = 0; j < pair_op.size(); ++j) {
        out.per_pair.push_back({pair_op[j].mean, pair_ac[j].mean});
        pair_err.push_back({pair_op[j].std_error, pair_ac[j].std_error});
    }
    out.cue_stderr = std::move(cue_err);
    out.pair_stderr = std::move(pair_err);
    return out;
}

SimReport simulate(const Scenario& scenario, const SimulationPlan& plan) {
    return run(scenario, plan, true);
}

SimReport simulate_serial(const Scenario& scenario, const SimulationPlan& plan) {
    return run(scenario, plan, false);
}

void write_batch_csv(std::ostream& os, const SimReport& report) {
    os << "batch,metric,entity_index,value\n";
    char buf[64];
    const auto row = [&](int batch, const char* metric, std::size_t index, double value) {
        std::snprintf(buf, sizeof buf, "%.17g", value);
        os << batch + 1 << ',' << metric << ',' << index + 1 << ',' << buf << '\n';
    };
    const int batches = report.cue_sop.empty()
                            ? (report.pair_op.empty() ? 0 : static_cast<int>(report.pair_op[0].batch_means.size()))
                            : static_cast<int>(report.cue_sop[0].batch_means.size());
    for (int b = 0; b < batches; ++b) {
        for (std::size_t i = 0; i < report.cue_sop.size(); ++i) {
            row(b, "sop", i, report.cue_sop[i].batch_means[b]);
        }
        for (std::size_t i = 0; i < report.cue_asc.size(); ++i) {
            row(b, "asc", i, report.cue_asc[i].batch_means[b]);
        }
        for (std::size_t j = 0; j < report.pair_op.size(); ++j) {
            row(b, "op", j, report.pair_op[j].batch_means[b]);
        }
        for (std::size_t j = 0; j < report.pair_ac.size(); ++j) {
            row(b, "ac", j, report.pair_ac[j].batch_means[b]);
        }
    }
}

ProbeQuantity probe_from_string(const std::string& tag) {
    if (tag == "sinr_cue_b") return ProbeQuantity::sinr_cue_b;
    if (tag == "sinr_cue_e") return ProbeQuantity::sinr_cue_e;
    if (tag == "sinr_d2d") return ProbeQuantity::sinr_d2d;
    throw usage_error("unknown probe quantity '" + tag + "'");
}

double EmpiricalCdf::cdf(double x) const {
    const auto it = std::upper_bound(samples.begin(), samples.end(), x);
    return static_cast<double>(it - samples.begin()) / static_cast<double>(samples.size());
}

EmpiricalCdf empirical_cdf_probe(ProbeQuantity quantity, const Scenario& scenario, long long samples,
                                 std::uint64_t seed) {
    if (samples < 1) throw usage_error("probe needs at least one sample");
    const SimContext ctx = make_context(scenario);
    std::mt19937_64 eng(batch_seed(seed, 0));
    SlotState state(ctx);
    EmpiricalCdf out;
    out.samples.reserve(samples);
    for (long long slot = 0; slot < samples; ++slot) {
        draw_slot(ctx, eng, state);
        std::fill(state.noise_b.begin(), state.noise_b.end(), 1.0);
        std::fill(state.noise_e.begin(), state.noise_e.end(), 1.0);
        for (int j = 0; j < ctx.m; ++j) {
            if (!state.underlay[j]) continue;
            state.noise_b[state.pick[j]] += state.d2d_b[j];
            state.noise_e[state.pick[j]] += state.d2d_e[j];
        }
        double value = 0;
        switch (quantity) {
            case ProbeQuantity::sinr_cue_b:
                value = state.cue_b[0] / state.noise_b[0];
                break;
            case ProbeQuantity::sinr_cue_e:
                value = state.cue_e[0] / state.noise_e[0];
                break;
            case ProbeQuantity::sinr_d2d: {
                if (state.underlay[0]) {
                    const int c = state.pick[0];
                    double interference = 1.0 + state.cue_rx[c * ctx.m];
                    for (int k = 1; k < ctx.m; ++k) {
                        if (state.underlay[k] && state.pick[k] == c) {
                            interference += state.d2d_rx[k * ctx.m];
                        }
                    }
                    value = state.d2d_rx[0] / interference;
                } else {
                    value = state.d2d_rx[0];
                }
                break;
            }
        }
        out.samples.push_back(value);
    }
    std::sort(out.samples.begin(), out.samples.end());
    return out;
}

}  // namespace d2dsec
