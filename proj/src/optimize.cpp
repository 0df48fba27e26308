#include "d2dsec/optimize.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>

#include "d2dsec/case_study.hpp"
#include "d2dsec/errors.hpp"
#include "d2dsec/special.hpp"

namespace d2dsec {

namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr double kSingularRel = 1e-7;
constexpr double kPerturbRel = 1e-5;
constexpr double kRefineTol = 1e-6;
constexpr double kEndpointSnap = 1e-9;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

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

void require_exact(int m) {
    if (m > kMaxExactPairs) {
        throw capacity_error("power-set enumeration over " + std::to_string(m) +
                             " pairs exceeds the exact-evaluation cap");
    }
}

// Deterministic golden-section maximization; assumes a bracketed maximum.
double golden_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo;
    double b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > tol) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

std::vector<int> subset_members(unsigned mask, int bits) {
    std::vector<int> members;
    for (int b = 0; b < bits; ++b) {
        if (mask >> b & 1u) members.push_back(b);
    }
    return members;
}

std::vector<int> peer_members(unsigned mask, int m, int j) {
    std::vector<int> members;
    for (int b = 0; b < m - 1; ++b) {
        if (mask >> b & 1u) members.push_back(b < j ? b : b + 1);
    }
    return members;
}

double overlay_success(double r_t, double band, double g_dd) {
    if (r_t == 0) return 1.0;
    if (!(band > 0)) return 0.0;
    const double e = r_t / band;
    if (e > 1000.0) return 0.0;
    return std::exp(-(std::exp2(e) - 1.0) / g_dd);
}

// p-independent kernel tables behind the rate objective.
struct RateTables {
    int n = 0;
    int m = 0;
    std::vector<std::vector<double>> lambda;               // [i][mask]
    std::vector<std::vector<std::vector<double>>> dterm;   // [j][i][peer mask]
    std::vector<double> psi_dd;                            // [j]
};

RateTables rate_tables(const LinkBudget& budget, const QuadratureSpec& spec) {
    require_exact(budget.m);
    RateTables t;
    t.n = budget.n;
    t.m = budget.m;
    t.lambda.assign(t.n, std::vector<double>(1u << t.m));
    for (int i = 0; i < t.n; ++i) {
        const double g_ab = budget.cue_to_bs(i);
        const double g_ae = budget.cue_to_eve(i);
        for (unsigned mask = 0; mask < (1u << t.m); ++mask) {
            if (mask == 0) {
                t.lambda[i][mask] = lambda_no_interference(g_ab, g_ae);
            } else {
                const UnderlaySet set{subset_members(mask, t.m), std::nullopt};
                t.lambda[i][mask] = lambda_interference(g_ab, g_ae, sum_density(set, bs(), budget),
                                                        sum_density(set, eve(), budget), spec);
            }
        }
    }
    t.dterm.assign(t.m, std::vector<std::vector<double>>(t.n, std::vector<double>(1u << (t.m - 1))));
    t.psi_dd.resize(t.m);
    for (int j = 0; j < t.m; ++j) {
        const double g_dd = budget.d2d_to_rx(j, j);
        t.psi_dd[j] = psi(1.0 / g_dd);
        std::vector<SumDensity> h(1u << (t.m - 1), SumDensity::empty());
        for (unsigned mask = 1; mask < (1u << (t.m - 1)); ++mask) {
            h[mask] = sum_density({peer_members(mask, t.m, j), j}, d2d_rx(j), budget);
        }
        for (int i = 0; i < t.n; ++i) {
            const double g_ad = budget.cue_to_rx(i, j);
            for (unsigned mask = 0; mask < (1u << (t.m - 1)); ++mask) {
                const auto term = [&](double g) {
                    const double delta = mask == 0 ? delta_no_interference(g_dd, g)
                                                   : delta_interference(g_dd, g, h[mask], spec);
                    return delta / (t.n * (g / g_dd - 1.0));
                };
                if (std::abs(g_ad / g_dd - 1.0) < kSingularRel) {
                    t.dterm[j][i][mask] =
                        0.5 * (term(g_ad * (1.0 + kPerturbRel)) + term(g_ad * (1.0 - kPerturbRel)));
                } else {
                    t.dterm[j][i][mask] = term(g_ad);
                }
            }
        }
    }
    return t;
}

P1Coefficients coefficients_at(const RateTables& t, double p) {
    const double eps = p / t.n;
    const double vth = p * (1.0 - 1.0 / t.n);
    P1Coefficients c;
    c.a.assign(t.n, 0.0);
    c.b.assign(t.n, 0.0);
    c.u.assign(t.m, 0.0);
    c.v.assign(t.m, 0.0);
    c.s.assign(t.m, 0.0);
    for (int i = 0; i < t.n; ++i) {
        for (unsigned mask = 0; mask < (1u << t.m); ++mask) {
            const int sz = std::popcount(mask);
            const double w = ipow(eps, sz) * t.lambda[i][mask];
            const double vpart = ipow(vth, t.m - sz);
            c.a[i] += w * (ipow(1.0 - eps, t.m - sz) - vpart);
            c.b[i] += w * vpart;
        }
    }
    double overlay_weight = 0.0;
    for (int l = 1; l <= t.m; ++l) {
        overlay_weight += binomial(t.m - 1, l - 1) * ipow(p, t.m - l) * ipow(1.0 - p, l) / l;
    }
    for (int j = 0; j < t.m; ++j) {
        for (int i = 0; i < t.n; ++i) {
            for (unsigned mask = 0; mask < (1u << (t.m - 1)); ++mask) {
                const int sz = std::popcount(mask);
                const double w = ipow(eps, sz + 1) * t.dterm[j][i][mask];
                const double vpart = ipow(vth, t.m - 1 - sz);
                c.u[j] += w * (ipow(1.0 - eps, t.m - 1 - sz) - vpart);
                c.v[j] += w * vpart;
            }
        }
        c.s[j] = t.psi_dd[j] * overlay_weight;
    }
    return c;
}

double rate_objective(const P1Coefficients& c, int n, double beta, double w_c, double w_d) {
    double sum_a = 0, sum_b = 0, sum_us = 0, sum_vs = 0;
    for (double x : c.a) sum_a += x;
    for (double x : c.b) sum_b += x;
    for (std::size_t j = 0; j < c.u.size(); ++j) {
        sum_us += c.u[j] + c.s[j];
        sum_vs += c.v[j] - c.s[j];
    }
    const double uc = (sum_a * beta + sum_b) / (n * kLn2);
    const double ud = (sum_us * beta + sum_vs) / kLn2;
    if (!(uc > 0) || !(ud > 0)) return kNegInf;
    return w_c * std::log(uc) + w_d * std::log(ud);
}

// Beta-independent kernel tables behind the outage objective.
struct OutageTables {
    int n = 0;
    int m = 0;
    std::vector<std::vector<double>> theta_full;              // [i][mask], full band
    std::vector<std::vector<std::vector<double>>> omega_full; // [j][i][peer mask]
    std::vector<double> g_dd;                                 // [j]
};

// Per-beta slice of the partitioned-band kernels.
struct OutageSlice {
    double beta = 0;
    std::vector<std::vector<double>> theta_beta;
    std::vector<std::vector<std::vector<double>>> omega_beta;
    std::vector<std::vector<double>> overlay;  // [j][l-1]
};

OutageTables outage_tables(const LinkBudget& budget, const SchemeConfig& scheme,
                           const QuadratureSpec& spec) {
    require_exact(budget.m);
    OutageTables t;
    t.n = budget.n;
    t.m = budget.m;
    const double rate_s = t.n * scheme.r_s;
    const double rate_t = t.n * scheme.r_t;
    t.theta_full.assign(t.n, std::vector<double>(1u << t.m));
    for (int i = 0; i < t.n; ++i) {
        const double g_ab = budget.cue_to_bs(i);
        const double g_ae = budget.cue_to_eve(i);
        for (unsigned mask = 0; mask < (1u << t.m); ++mask) {
            if (mask == 0) {
                t.theta_full[i][mask] = theta_no_interference(rate_s, 1.0, g_ab, g_ae);
            } else {
                const UnderlaySet set{subset_members(mask, t.m), std::nullopt};
                t.theta_full[i][mask] =
                    theta_interference(rate_s, 1.0, g_ab, g_ae, sum_density(set, bs(), budget),
                                       sum_density(set, eve(), budget), spec);
            }
        }
    }
    t.omega_full.assign(t.m, std::vector<std::vector<double>>(t.n, std::vector<double>(1u << (t.m - 1))));
    t.g_dd.resize(t.m);
    for (int j = 0; j < t.m; ++j) {
        t.g_dd[j] = budget.d2d_to_rx(j, j);
        for (int i = 0; i < t.n; ++i) {
            const double g_ad = budget.cue_to_rx(i, j);
            for (unsigned mask = 0; mask < (1u << (t.m - 1)); ++mask) {
                if (mask == 0) {
                    t.omega_full[j][i][mask] = omega_no_interference(rate_t, 1.0, t.g_dd[j], g_ad);
                } else {
                    const UnderlaySet set{peer_members(mask, t.m, j), j};
                    t.omega_full[j][i][mask] = omega_interference(
                        rate_t, 1.0, t.g_dd[j], g_ad, sum_density(set, d2d_rx(j), budget), spec);
                }
            }
        }
    }
    return t;
}

OutageSlice outage_slice(const OutageTables& t, const LinkBudget& budget, const SchemeConfig& scheme,
                         double beta, const QuadratureSpec& spec) {
    OutageSlice s;
    s.beta = beta;
    const double rate_s = t.n * scheme.r_s;
    const double rate_t = t.n * scheme.r_t;
    s.theta_beta.assign(t.n, std::vector<double>(1u << t.m));
    for (int i = 0; i < t.n; ++i) {
        const double g_ab = budget.cue_to_bs(i);
        const double g_ae = budget.cue_to_eve(i);
        for (unsigned mask = 0; mask < (1u << t.m); ++mask) {
            if (beta == 1.0) {
                s.theta_beta[i][mask] = t.theta_full[i][mask];
            } else if (mask == 0) {
                s.theta_beta[i][mask] = theta_no_interference(rate_s, beta, g_ab, g_ae);
            } else if (t.n == 1 && std::popcount(mask) == t.m) {
                s.theta_beta[i][mask] = 0.0;  // weight is identically zero
            } else {
                const UnderlaySet set{subset_members(mask, t.m), std::nullopt};
                s.theta_beta[i][mask] =
                    theta_interference(rate_s, beta, g_ab, g_ae, sum_density(set, bs(), budget),
                                       sum_density(set, eve(), budget), spec);
            }
        }
    }
    s.omega_beta.assign(t.m, std::vector<std::vector<double>>(t.n, std::vector<double>(1u << (t.m - 1))));
    s.overlay.assign(t.m, std::vector<double>(t.m));
    for (int j = 0; j < t.m; ++j) {
        for (int i = 0; i < t.n; ++i) {
            const double g_ad = budget.cue_to_rx(i, j);
            for (unsigned mask = 0; mask < (1u << (t.m - 1)); ++mask) {
                if (beta == 1.0) {
                    s.omega_beta[j][i][mask] = t.omega_full[j][i][mask];
                } else if (mask == 0) {
                    s.omega_beta[j][i][mask] = omega_no_interference(rate_t, beta, t.g_dd[j], g_ad);
                } else if (t.n == 1 && std::popcount(mask) == t.m - 1) {
                    s.omega_beta[j][i][mask] = 0.0;
                } else {
                    const UnderlaySet set{peer_members(mask, t.m, j), j};
                    s.omega_beta[j][i][mask] = omega_interference(
                        rate_t, beta, t.g_dd[j], g_ad, sum_density(set, d2d_rx(j), budget), spec);
                }
            }
        }
        for (int l = 1; l <= t.m; ++l) {
            s.overlay[j][l - 1] = overlay_success(l * scheme.r_t, 1.0 - beta, t.g_dd[j]);
        }
    }
    return s;
}

double outage_objective(const OutageTables& t, const OutageSlice& s, double p, double w_c, double w_d) {
    const double eps = p / t.n;
    const double vth = p * (1.0 - 1.0 / t.n);
    double sum_sop = 0;
    for (int i = 0; i < t.n; ++i) {
        double covered = 0;
        for (unsigned mask = 0; mask < (1u << t.m); ++mask) {
            const int sz = std::popcount(mask);
            const double w_full = ipow(vth, t.m - sz);
            const double w_beta = ipow(1.0 - eps, t.m - sz) - w_full;
            covered += ipow(eps, sz) * (w_full * t.theta_full[i][mask] + w_beta * s.theta_beta[i][mask]);
        }
        sum_sop += 1.0 - covered;
    }
    double sum_op = 0;
    for (int j = 0; j < t.m; ++j) {
        double covered = 0;
        for (int l = 1; l <= t.m; ++l) {
            covered += binomial(t.m - 1, l - 1) * ipow(p, t.m - l) * ipow(1.0 - p, l) *
                       s.overlay[j][l - 1];
        }
        for (int i = 0; i < t.n; ++i) {
            for (unsigned mask = 0; mask < (1u << (t.m - 1)); ++mask) {
                const int sz = std::popcount(mask);
                const double w_full = ipow(vth, t.m - 1 - sz);
                const double w_beta = ipow(1.0 - eps, t.m - 1 - sz) - w_full;
                covered += ipow(eps, sz + 1) *
                           (w_full * t.omega_full[j][i][mask] + w_beta * s.omega_beta[j][i][mask]);
            }
        }
        sum_op += 1.0 - covered;
    }
    if (!(sum_sop > 0) || !(sum_op > 0)) return kNegInf;
    return -(w_c * std::log(sum_sop) + w_d * std::log(sum_op));
}

}  // namespace

FairnessValue fairness_objective(const MetricReport& report, double w_c, double w_d, Problem problem) {
    double uc = 0;
    double ud = 0;
    for (const CueMetrics& c : report.per_cue) uc += problem == Problem::p1 ? c.asc : c.sop;
    for (const PairMetrics& d : report.per_pair) ud += problem == Problem::p1 ? d.ac : d.op;
    if (!(uc > 0) || !(ud > 0)) return {kNegInf, true};
    const double value = w_c * std::log(uc) + w_d * std::log(ud);
    return {problem == Problem::p1 ? value : -value, false};
}

P1Coefficients p1_coefficients(const LinkBudget& budget, const SchemeConfig& scheme,
                               const QuadratureSpec& spec) {
    return coefficients_at(rate_tables(budget, spec), scheme.p);
}

double p1_optimal_beta(const P1Coefficients& coeffs, double w_c, double w_d) {
    double sum_a = 0, sum_b = 0, sum_us = 0, sum_vs = 0;
    for (double x : coeffs.a) sum_a += x;
    for (double x : coeffs.b) sum_b += x;
    for (std::size_t j = 0; j < coeffs.u.size(); ++j) {
        sum_us += coeffs.u[j] + coeffs.s[j];
        sum_vs += coeffs.v[j] - coeffs.s[j];
    }
    if (sum_us >= 0) return 1.0;
    const double stationary = -w_d * sum_b / sum_a - w_c * sum_vs / sum_us;
    return std::clamp(stationary, 0.0, 1.0);
}

double p1_objective(const LinkBudget& budget, const SchemeConfig& scheme, double p, double beta,
                    const QuadratureSpec& spec) {
    SchemeConfig at = scheme;
    at.p = p;
    at.beta = beta;
    MetricReport report;
    for (int i = 0; i < budget.n; ++i) report.per_cue.push_back({0.0, asc_cue(i, budget, at, spec)});
    for (int j = 0; j < budget.m; ++j) report.per_pair.push_back({0.0, ac_pair(j, budget, at, spec)});
    return fairness_objective(report, scheme.w_c, scheme.w_d, Problem::p1).value;
}

double p2_objective(const LinkBudget& budget, const SchemeConfig& scheme, double p, double beta,
                    const QuadratureSpec& spec) {
    SchemeConfig at = scheme;
    at.p = p;
    at.beta = beta;
    MetricReport report;
    for (int i = 0; i < budget.n; ++i) report.per_cue.push_back({sop_cue(i, budget, at, spec), 0.0});
    for (int j = 0; j < budget.m; ++j) report.per_pair.push_back({op_pair(j, budget, at, spec), 0.0});
    return fairness_objective(report, scheme.w_c, scheme.w_d, Problem::p2).value;
}

Optimum solve_p1(const LinkBudget& budget, const SchemeConfig& scheme, const GridSpec& grid,
                 const QuadratureSpec& spec) {
    const RateTables tables = rate_tables(budget, spec);
    const int points = std::max(grid.p_points, 2);

    const auto eval = [&](double p) {
        const P1Coefficients c = coefficients_at(tables, p);
        const double beta = p1_optimal_beta(c, scheme.w_c, scheme.w_d);
        return std::pair<double, double>(rate_objective(c, tables.n, beta, scheme.w_c, scheme.w_d), beta);
    };

    double best_p = 0;
    double best_value = kNegInf;
    for (int k = 0; k < points; ++k) {
        const double p = static_cast<double>(k) / (points - 1);
        const double value = eval(p).first;
        if (value > best_value) {
            best_value = value;
            best_p = p;
        }
    }
    if (best_value == kNegInf) throw usage_error("rate objective degenerate over the whole grid");

    double p_star = best_p;
    if (grid.refine) {
        const double step = 1.0 / (points - 1);
        const double lo = std::max(0.0, best_p - step);
        const double hi = std::min(1.0, best_p + step);
        p_star = golden_max([&](double p) { return eval(p).first; }, lo, hi, kRefineTol);
        if (eval(best_p).first > eval(p_star).first) p_star = best_p;
    }
    if (p_star > 1.0 - kEndpointSnap) p_star = 1.0;
    if (p_star < kEndpointSnap) p_star = 0.0;

    Optimum out;
    out.p_star = p_star;
    out.case_label = "grid";
    const auto winner = eval(p_star);
    out.objective = winner.first;
    if (p_star == 1.0) {
        out.beta_any = true;
        out.beta_star = 1.0;
    } else {
        out.beta_star = winner.second;
    }
    return out;
}

Optimum solve_p1_case_study(const LinkBudget& budget, const SchemeConfig& scheme) {
    const double mu = mu_gain(budget);
    const double nu = nu_gain(budget);
    Optimum out;
    if (mu + nu > 1.0) {
        if (scheme.w_c / mu < scheme.w_d / nu) {
            out.case_label = "case1";
            out.p_star = nu < 1.0 ? std::min(scheme.w_c / (1.0 - nu), 1.0) : 1.0;
            out.beta_star = 0.0;
        } else {
            out.case_label = "case2";
            if (mu < 1.0) {
                out.p_star = std::min(scheme.w_d / (1.0 - mu), 1.0);
                out.beta_star = 1.0;
            } else {
                out.p_star = 1.0;
                out.beta_star = 1.0;
            }
        }
    } else {
        out.case_label = "case3";
        out.p_star = 0.0;
        out.beta_star = scheme.w_c;
    }
    if (out.p_star == 1.0) {
        out.beta_any = true;
        out.beta_star = 1.0;
    }
    SchemeConfig at = scheme;
    at.p = out.p_star;
    at.beta = out.beta_star;
    out.objective =
        fairness_objective(case_study_metrics(budget, at).report, scheme.w_c, scheme.w_d, Problem::p1)
            .value;
    return out;
}

Optimum solve_p2(const LinkBudget& budget, const SchemeConfig& scheme, const GridSpec& grid,
                 const QuadratureSpec& spec) {
    const OutageTables tables = outage_tables(budget, scheme, spec);
    const int p_points = std::max(grid.p_points, 2);
    const int b_points = std::max(grid.beta_points, 2);

    double best_p = 0;
    double best_beta = 0;
    double best_value = kNegInf;
    for (int kb = 0; kb < b_points; ++kb) {
        const double beta = static_cast<double>(kb) / (b_points - 1);
        const OutageSlice slice = outage_slice(tables, budget, scheme, beta, spec);
        for (int kp = 0; kp < p_points; ++kp) {
            const double p = static_cast<double>(kp) / (p_points - 1);
            const double value = outage_objective(tables, slice, p, scheme.w_c, scheme.w_d);
            const bool improves =
                value > best_value ||
                (value == best_value && (p < best_p || (p == best_p && beta < best_beta)));
            if (improves) {
                best_value = value;
                best_p = p;
                best_beta = beta;
            }
        }
    }
    if (best_value == kNegInf) throw usage_error("outage objective degenerate over the whole grid");

    double p_star = best_p;
    double beta_star = best_beta;
    if (grid.refine) {
        const double beta_step = 1.0 / (b_points - 1);
        const double p_step = 1.0 / (p_points - 1);
        const auto beta_profile = [&](double beta) {
            const OutageSlice slice = outage_slice(tables, budget, scheme, beta, spec);
            return outage_objective(tables, slice, p_star, scheme.w_c, scheme.w_d);
        };
        const double beta_refined = golden_max(beta_profile, std::max(0.0, best_beta - beta_step),
                                               std::min(1.0, best_beta + beta_step), kRefineTol);
        if (beta_profile(beta_refined) > best_value) beta_star = beta_refined;

        const OutageSlice slice = outage_slice(tables, budget, scheme, beta_star, spec);
        const auto p_profile = [&](double p) {
            return outage_objective(tables, slice, p, scheme.w_c, scheme.w_d);
        };
        const double p_refined = golden_max(p_profile, std::max(0.0, best_p - p_step),
                                            std::min(1.0, best_p + p_step), kRefineTol);
        double refined_value = p_profile(p_refined);
        p_star = p_refined;
        for (double candidate : {0.0, 1.0, best_p}) {
            const double value = p_profile(candidate);
            if (value > refined_value || (value == refined_value && candidate < p_star)) {
                refined_value = value;
                p_star = candidate;
            }
        }
    }
    if (p_star > 1.0 - kEndpointSnap) p_star = 1.0;
    if (p_star < kEndpointSnap) p_star = 0.0;

    Optimum out;
    out.p_star = p_star;
    out.case_label = "grid";
    const OutageSlice slice = outage_slice(tables, budget, scheme, beta_star, spec);
    if (p_star == 1.0) {
        out.beta_any = true;
        out.beta_star = 1.0;
    } else {
        out.beta_star = beta_star;
    }
    out.objective = outage_objective(tables, slice, p_star, scheme.w_c, scheme.w_d);
    return out;
}

Optimum solve_p2_case_study(const LinkBudget& budget, const SchemeConfig& scheme) {
    if (budget.n != 1 || budget.m != 1) {
        throw usage_error("closed-form case study needs exactly one cellular user and one pair");
    }
    const double g_ab = budget.cue_to_bs(0);
    const double g_ae = budget.cue_to_eve(0);
    const double g_dd = budget.d2d_to_rx(0, 0);
    const double theta_underlay =
        theta_underlay_closed(scheme.r_s, g_ab, g_ae, budget.d2d_to_bs(0), budget.d2d_to_eve(0));
    const double omega_underlay =
        omega_no_interference(scheme.r_t, 1.0, g_dd, budget.cue_to_rx(0, 0));

    const auto slice_value = [&](double beta) {
        const double sop = 1.0 - theta_no_interference(scheme.r_s, beta, g_ab, g_ae);
        const double op = 1.0 - overlay_success(scheme.r_t, 1.0 - beta, g_dd);
        if (!(sop > 0) || !(op > 0)) return kNegInf;
        return -(scheme.w_c * std::log(sop) + scheme.w_d * std::log(op));
    };

    constexpr int kRhoPoints = 1001;
    bool rho_nonempty = false;
    double best_beta = 0;
    double best_value = kNegInf;
    for (int k = 0; k < kRhoPoints; ++k) {
        const double beta = static_cast<double>(k) / (kRhoPoints - 1);
        const double product = std::pow(mu_hat(beta, budget, scheme), scheme.w_c) *
                               std::pow(nu_hat(beta, budget, scheme), scheme.w_d);
        if (!(product < 1.0)) continue;
        rho_nonempty = true;
        const double value = slice_value(beta);
        if (value > best_value) {
            best_value = value;
            best_beta = beta;
        }
    }

    Optimum out;
    if (!rho_nonempty) {
        out.p_star = 1.0;
        out.beta_star = 1.0;
        out.beta_any = true;
        out.case_label = "rho-empty";
        const double sop = 1.0 - theta_underlay;
        const double op = 1.0 - omega_underlay;
        if (!(sop > 0) || !(op > 0)) throw usage_error("outage objective degenerate at full underlay");
        out.objective = -(scheme.w_c * std::log(sop) + scheme.w_d * std::log(op));
        return out;
    }
    const double step = 1.0 / (kRhoPoints - 1);
    const double refined = golden_max(slice_value, std::max(0.0, best_beta - step),
                                      std::min(1.0, best_beta + step), kRefineTol);
    if (slice_value(refined) > best_value) best_beta = refined;
    out.p_star = 0.0;
    out.beta_star = best_beta;
    out.case_label = "rho-nonempty";
    out.objective = slice_value(best_beta);
    return out;
}

}  // namespace d2dsec
