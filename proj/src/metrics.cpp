#include "d2dsec/metrics.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "d2dsec/errors.hpp"
#include "d2dsec/special.hpp"

namespace d2dsec {

namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr double kSingularRel = 1e-7;
constexpr double kPerturbRel = 1e-5;

double ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
    return r;
}

// 2^(rate_exp/beta_eff); +inf signals certain outage (zero share or overflow).
double pow2_ratio(double rate_exp, double beta_eff) {
    if (rate_exp == 0) return 1.0;
    if (!(beta_eff > 0)) return std::numeric_limits<double>::infinity();
    const double e = rate_exp / beta_eff;
    if (e > 1000.0) return std::numeric_limits<double>::infinity();
    return std::exp2(e);
}

void require_exact_capacity(int m) {
    if (m > kMaxExactPairs) {
        throw capacity_error("power-set enumeration over " + std::to_string(m) +
                             " pairs exceeds the exact-evaluation cap");
    }
}

void require_interference(const SumDensity& d) {
    if (d.form() == DensityForm::empty) {
        throw usage_error("interference kernel needs a non-empty underlay set");
    }
}

// Subsets of {0..m-1} minus pair j, bit b of the mask mapping past j.
std::vector<int> peer_subset(unsigned mask, int m, int j) {
    std::vector<int> members;
    for (int b = 0; b < m - 1; ++b) {
        if (mask >> b & 1u) members.push_back(b < j ? b : b + 1);
    }
    return members;
}

}  // namespace

double theta_no_interference(double rate_exp, double beta_eff, double g_ab, double g_ae) {
    const double pow2 = pow2_ratio(rate_exp, beta_eff);
    if (!std::isfinite(pow2)) return 0.0;
    return std::exp(-(pow2 - 1.0) / g_ab) / ((g_ae / g_ab) * pow2 + 1.0);
}

double theta_interference(double rate_exp, double beta_eff, double g_ab, double g_ae, const SumDensity& f,
                          const SumDensity& g, const QuadratureSpec& spec) {
    require_interference(f);
    require_interference(g);
    const double pow2 = pow2_ratio(rate_exp, beta_eff);
    if (!std::isfinite(pow2)) return 0.0;
    const double t = pow2 - 1.0;
    const double kappa = (g_ae / g_ab) * pow2;
    const auto integrand = [&](double x, double y) {
        return std::exp(-t * (x + 1.0) / g_ab) / (kappa * (x + 1.0) / (y + 1.0) + 1.0) * f.pdf(x) *
               g.pdf(y);
    };
    return integrate_quadrant(integrand, spec, f.mean(), g.mean());
}

double lambda_no_interference(double g_ab, double g_ae) {
    return psi(1.0 / g_ab + 1.0 / g_ae) - psi(1.0 / g_ab);
}

double lambda_interference(double g_ab, double g_ae, const SumDensity& f, const SumDensity& g,
                           const QuadratureSpec& spec) {
    require_interference(f);
    require_interference(g);
    const auto integrand = [&](double x, double y) {
        const double at_b = (x + 1.0) / g_ab;
        return (psi(at_b + (y + 1.0) / g_ae) - psi(at_b)) * f.pdf(x) * g.pdf(y);
    };
    return integrate_quadrant(integrand, spec, f.mean(), g.mean());
}

double omega_no_interference(double rate_exp, double beta_eff, double g_dd, double g_ad) {
    const double pow2 = pow2_ratio(rate_exp, beta_eff);
    if (!std::isfinite(pow2)) return 0.0;
    const double t = pow2 - 1.0;
    return std::exp(-t / g_dd) / ((g_ad / g_dd) * t + 1.0);
}

double omega_interference(double rate_exp, double beta_eff, double g_dd, double g_ad, const SumDensity& h,
                          const QuadratureSpec& spec) {
    require_interference(h);
    const double pow2 = pow2_ratio(rate_exp, beta_eff);
    if (!std::isfinite(pow2)) return 0.0;
    const double t = pow2 - 1.0;
    const double numerator = integrate_halfline(
        [&](double x) { return std::exp(-t * (x + 1.0) / g_dd) * h.pdf(x); }, spec, h.mean());
    return numerator / ((g_ad / g_dd) * t + 1.0);
}

double delta_no_interference(double g_dd, double g_ad) {
    return psi(1.0 / g_dd) - psi(1.0 / g_ad);
}

double delta_interference(double g_dd, double g_ad, const SumDensity& h, const QuadratureSpec& spec) {
    require_interference(h);
    const auto integrand = [&](double x) {
        return (psi((x + 1.0) / g_dd) - psi((x + 1.0) / g_ad)) * h.pdf(x);
    };
    return integrate_halfline(integrand, spec, h.mean());
}

double theta(int i, const UnderlaySet& set, double beta_eff, const LinkBudget& budget,
             const SchemeConfig& scheme, const QuadratureSpec& spec) {
    const double rate_exp = budget.n * scheme.r_s;
    const double g_ab = budget.cue_to_bs(i);
    const double g_ae = budget.cue_to_eve(i);
    if (set.members.empty()) return theta_no_interference(rate_exp, beta_eff, g_ab, g_ae);
    return theta_interference(rate_exp, beta_eff, g_ab, g_ae, sum_density(set, bs(), budget),
                              sum_density(set, eve(), budget), spec);
}

double sop_cue(int i, const LinkBudget& budget, const SchemeConfig& scheme, const QuadratureSpec& spec) {
    require_exact_capacity(budget.m);
    const int n = budget.n;
    const int m = budget.m;
    const double eps = scheme.p / n;
    const double vth = scheme.p * (1.0 - 1.0 / n);
    const double rate_exp = n * scheme.r_s;
    const double g_ab = budget.cue_to_bs(i);
    const double g_ae = budget.cue_to_eve(i);

    double covered = 0.0;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        UnderlaySet set;
        for (int k = 0; k < m; ++k) {
            if (mask >> k & 1u) set.members.push_back(k);
        }
        const int sz = static_cast<int>(set.members.size());
        const double w_full = ipow(vth, m - sz);
        const double w_beta = ipow(1.0 - eps, m - sz) - w_full;
        if (w_full == 0.0 && w_beta == 0.0) continue;

        double th_full = 0.0;
        double th_beta = 0.0;
        if (sz == 0) {
            if (w_full != 0.0) th_full = theta_no_interference(rate_exp, 1.0, g_ab, g_ae);
            if (w_beta != 0.0) th_beta = theta_no_interference(rate_exp, scheme.beta, g_ab, g_ae);
        } else {
            const SumDensity f = sum_density(set, bs(), budget);
            const SumDensity g = sum_density(set, eve(), budget);
            if (w_full != 0.0) th_full = theta_interference(rate_exp, 1.0, g_ab, g_ae, f, g, spec);
            if (w_beta != 0.0) {
                th_beta = theta_interference(rate_exp, scheme.beta, g_ab, g_ae, f, g, spec);
            }
        }
        covered += ipow(eps, sz) * (w_full * th_full + w_beta * th_beta);
    }
    return 1.0 - covered;
}

double asc_cue(int i, const LinkBudget& budget, const SchemeConfig& scheme, const QuadratureSpec& spec) {
    require_exact_capacity(budget.m);
    const int n = budget.n;
    const int m = budget.m;
    const double eps = scheme.p / n;
    const double vth = scheme.p * (1.0 - 1.0 / n);
    const double g_ab = budget.cue_to_bs(i);
    const double g_ae = budget.cue_to_eve(i);

    double acc = 0.0;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        UnderlaySet set;
        for (int k = 0; k < m; ++k) {
            if (mask >> k & 1u) set.members.push_back(k);
        }
        const int sz = static_cast<int>(set.members.size());
        const double share = scheme.beta * ipow(1.0 - eps, m - sz) + (1.0 - scheme.beta) * ipow(vth, m - sz);
        const double weight = ipow(eps, sz) * share;
        if (weight == 0.0) continue;
        double lam;
        if (sz == 0) {
            lam = lambda_no_interference(g_ab, g_ae);
        } else {
            lam = lambda_interference(g_ab, g_ae, sum_density(set, bs(), budget),
                                      sum_density(set, eve(), budget), spec);
        }
        acc += weight * lam;
    }
    return acc / (n * kLn2);
}

double op_pair(int j, const LinkBudget& budget, const SchemeConfig& scheme, const QuadratureSpec& spec) {
    require_exact_capacity(budget.m);
    const int n = budget.n;
    const int m = budget.m;
    const double eps = scheme.p / n;
    const double vth = scheme.p * (1.0 - 1.0 / n);
    const double rate_exp = n * scheme.r_t;
    const double g_dd = budget.d2d_to_rx(j, j);

    double covered = 0.0;
    for (int l = 1; l <= m; ++l) {
        const double w = binomial(m - 1, l - 1) * ipow(scheme.p, m - l) * ipow(1.0 - scheme.p, l);
        if (w == 0.0) continue;
        const double pow2 = pow2_ratio(l * scheme.r_t, 1.0 - scheme.beta);
        if (std::isfinite(pow2)) covered += w * std::exp(-(pow2 - 1.0) / g_dd);
    }

    for (int i = 0; i < n; ++i) {
        const double g_ad = budget.cue_to_rx(i, j);
        for (unsigned mask = 0; mask < (1u << (m - 1)); ++mask) {
            UnderlaySet set{peer_subset(mask, m, j), j};
            const int sz = static_cast<int>(set.members.size());
            const double w_full = ipow(vth, m - 1 - sz);
            const double w_beta = ipow(1.0 - eps, m - 1 - sz) - w_full;
            if (w_full == 0.0 && w_beta == 0.0) continue;

            double om_full = 0.0;
            double om_beta = 0.0;
            if (sz == 0) {
                if (w_full != 0.0) om_full = omega_no_interference(rate_exp, 1.0, g_dd, g_ad);
                if (w_beta != 0.0) om_beta = omega_no_interference(rate_exp, scheme.beta, g_dd, g_ad);
            } else {
                const SumDensity h = sum_density(set, d2d_rx(j), budget);
                if (w_full != 0.0) om_full = omega_interference(rate_exp, 1.0, g_dd, g_ad, h, spec);
                if (w_beta != 0.0) {
                    om_beta = omega_interference(rate_exp, scheme.beta, g_dd, g_ad, h, spec);
                }
            }
            covered += ipow(eps, sz + 1) * (w_full * om_full + w_beta * om_beta);
        }
    }
    return 1.0 - covered;
}

double ac_pair(int j, const LinkBudget& budget, const SchemeConfig& scheme, const QuadratureSpec& spec) {
    require_exact_capacity(budget.m);
    const int n = budget.n;
    const int m = budget.m;
    const double eps = scheme.p / n;
    const double vth = scheme.p * (1.0 - 1.0 / n);
    const double g_dd = budget.d2d_to_rx(j, j);

    double overlay_weight = 0.0;
    for (int l = 1; l <= m; ++l) {
        overlay_weight +=
            binomial(m - 1, l - 1) * ipow(scheme.p, m - l) * ipow(1.0 - scheme.p, l) / l;
    }
    double acc = -(1.0 - scheme.beta) * psi(1.0 / g_dd) / kLn2 * overlay_weight;

    for (int i = 0; i < n; ++i) {
        const double g_ad = budget.cue_to_rx(i, j);
        const auto term_at = [&](double g_ad_used) {
            double sum = 0.0;
            for (unsigned mask = 0; mask < (1u << (m - 1)); ++mask) {
                UnderlaySet set{peer_subset(mask, m, j), j};
                const int sz = static_cast<int>(set.members.size());
                const double share = scheme.beta * ipow(1.0 - eps, m - 1 - sz) +
                                     (1.0 - scheme.beta) * ipow(vth, m - 1 - sz);
                const double weight = ipow(eps, sz + 1) * share;
                if (weight == 0.0) continue;
                double delta;
                if (sz == 0) {
                    delta = delta_no_interference(g_dd, g_ad_used);
                } else {
                    delta = delta_interference(g_dd, g_ad_used, sum_density(set, d2d_rx(j), budget), spec);
                }
                sum += weight * delta;
            }
            return sum / (n * kLn2 * (g_ad_used / g_dd - 1.0));
        };
        if (std::abs(g_ad / g_dd - 1.0) < kSingularRel) {
            acc += 0.5 * (term_at(g_ad * (1.0 + kPerturbRel)) + term_at(g_ad * (1.0 - kPerturbRel)));
        } else {
            acc += term_at(g_ad);
        }
    }
    return acc;
}

MetricReport analytic_report(const LinkBudget& budget, const SchemeConfig& scheme,
                             const QuadratureSpec& spec) {
    MetricReport report;
    report.source = MetricSource::analytic;
    report.per_cue.reserve(budget.n);
    report.per_pair.reserve(budget.m);
    for (int i = 0; i < budget.n; ++i) {
        report.per_cue.push_back({sop_cue(i, budget, scheme, spec), asc_cue(i, budget, scheme, spec)});
    }
    for (int j = 0; j < budget.m; ++j) {
        report.per_pair.push_back({op_pair(j, budget, scheme, spec), ac_pair(j, budget, scheme, spec)});
    }
    return report;
}

}  // namespace d2dsec
