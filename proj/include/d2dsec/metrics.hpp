#pragma once

#include <optional>
#include <vector>

#include "d2dsec/density.hpp"
#include "d2dsec/link_budget.hpp"
#include "d2dsec/model.hpp"
#include "d2dsec/quadrature.hpp"

namespace d2dsec {

struct CueMetrics {
    double sop = 0;  // secrecy outage probability
    double asc = 0;  // average secrecy capacity, bit/s/Hz
};

struct PairMetrics {
    double op = 0;  // outage probability
    double ac = 0;  // average capacity, bit/s/Hz
};

enum class MetricSource { analytic, simulated };

struct MetricReport {
    std::vector<CueMetrics> per_cue;
    std::vector<PairMetrics> per_pair;
    MetricSource source = MetricSource::analytic;
    std::optional<std::vector<CueMetrics>> cue_stderr;
    std::optional<std::vector<PairMetrics>> pair_stderr;
};

// Exact enumeration walks 2^m subsets; above this, callers are sent to the
// Monte Carlo engine instead.
inline constexpr int kMaxExactPairs = 12;

// Conditional non-outage kernels. rate_exp is the full-band rate exponent
// (n r_s or n r_t); beta_eff is the share in force for the realization.
double theta_no_interference(double rate_exp, double beta_eff, double g_ab, double g_ae);
double theta_interference(double rate_exp, double beta_eff, double g_ab, double g_ae, const SumDensity& f,
                          const SumDensity& g, const QuadratureSpec& spec = {});
double lambda_no_interference(double g_ab, double g_ae);
double lambda_interference(double g_ab, double g_ae, const SumDensity& f, const SumDensity& g,
                           const QuadratureSpec& spec = {});
double omega_no_interference(double rate_exp, double beta_eff, double g_dd, double g_ad);
double omega_interference(double rate_exp, double beta_eff, double g_dd, double g_ad, const SumDensity& h,
                          const QuadratureSpec& spec = {});
double delta_no_interference(double g_dd, double g_ad);
double delta_interference(double g_dd, double g_ad, const SumDensity& h, const QuadratureSpec& spec = {});

// Conditional non-outage probability of CUE i given the underlay realization.
double theta(int i, const UnderlaySet& set, double beta_eff, const LinkBudget& budget,
             const SchemeConfig& scheme, const QuadratureSpec& spec = {});

// Mode-averaged metrics. SOP evaluates the unclamped ratio convention, so
// r_s = 0 yields P(ratio < 1) rather than the clamped-definition 0.
double sop_cue(int i, const LinkBudget& budget, const SchemeConfig& scheme, const QuadratureSpec& spec = {});
double asc_cue(int i, const LinkBudget& budget, const SchemeConfig& scheme, const QuadratureSpec& spec = {});
double op_pair(int j, const LinkBudget& budget, const SchemeConfig& scheme, const QuadratureSpec& spec = {});
double ac_pair(int j, const LinkBudget& budget, const SchemeConfig& scheme, const QuadratureSpec& spec = {});

MetricReport analytic_report(const LinkBudget& budget, const SchemeConfig& scheme,
                             const QuadratureSpec& spec = {});

}  // namespace d2dsec
