#include "d2dsec/case_study.hpp"

#include <cmath>

#include "d2dsec/errors.hpp"
#include "d2dsec/special.hpp"

namespace d2dsec {

namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr double kSingularRel = 1e-7;
constexpr double kPerturbRel = 1e-5;

void require_single(const LinkBudget& budget) {
    if (budget.n != 1 || budget.m != 1) {
        throw usage_error("closed-form case study needs exactly one cellular user and one pair");
    }
}

// P(overlay D2D rate target met) = exp(-(2^(r_t/band) - 1)/g_dd).
double overlay_success(double r_t, double band, double g_dd) {
    if (r_t == 0) return 1.0;
    if (!(band > 0)) return 0.0;
    const double e = r_t / band;
    if (e > 1000.0) return 0.0;
    return std::exp(-(std::exp2(e) - 1.0) / g_dd);
}

double underlay_capacity_ratio(double g_dd, double g_ad) {
    return (psi(1.0 / g_dd) - psi(1.0 / g_ad)) / (g_ad / g_dd - 1.0);
}

// Averages f over the +/- relative perturbation of x.
template <typename F>
double perturbed(const F& f, double x) {
    return 0.5 * (f(x * (1.0 + kPerturbRel)) + f(x * (1.0 - kPerturbRel)));
}

}  // namespace

double theta_underlay_closed(double r_s, double g_ab, double g_ae, double g_db, double g_de) {
    const double pow2 = std::exp2(r_s);
    const double tau = (pow2 - 1.0) / g_ab;
    const double kappa = pow2 * g_ae / g_ab;
    const double eta = tau + 1.0 / g_db - kappa / g_de;
    const double scale = tau + 1.0 / g_db + kappa / g_de;
    if (std::abs(eta) < kSingularRel * scale) {
        return 0.5 * (theta_underlay_closed(r_s, g_ab, g_ae, g_db * (1.0 + kPerturbRel),
                                            g_de * (1.0 - kPerturbRel)) +
                      theta_underlay_closed(r_s, g_ab, g_ae, g_db * (1.0 - kPerturbRel),
                                            g_de * (1.0 + kPerturbRel)));
    }
    const double damp = std::exp(-tau);
    return damp / (g_db * eta) +
           damp *
               (kappa * (eta + 1.0) * psi((kappa + 1.0) / g_de) +
                (eta - kappa) * psi((tau + 1.0 / g_db) * (1.0 + 1.0 / kappa))) /
               (g_db * g_de * eta * eta);
}

double lambda_underlay_closed(double g_ab, double g_ae, double g_db, double g_de) {
    const double r1 = g_db / g_ab;
    const double r2 = g_ab * g_de / (g_ae * g_db);
    const double r3 = g_de / g_ae;
    if (std::abs(r1 - 1.0) < kSingularRel || std::abs(r2 - 1.0) < kSingularRel ||
        std::abs(r3 - 1.0) < kSingularRel) {
        return 0.5 * (lambda_underlay_closed(g_ab, g_ae, g_db * (1.0 + kPerturbRel),
                                             g_de * (1.0 - kPerturbRel)) +
                      lambda_underlay_closed(g_ab, g_ae, g_db * (1.0 - kPerturbRel),
                                             g_de * (1.0 + kPerturbRel)));
    }
    const double cross = psi((g_ae / g_ab + 1.0) / g_de);
    return ((cross - psi((g_ab / g_ae + 1.0) / g_db)) / (r2 - 1.0) +
            (psi(1.0 / g_ab + 1.0 / g_ae) - cross) / (r3 - 1.0) + psi(1.0 / g_ab) - psi(1.0 / g_db)) /
           (r1 - 1.0);
}

double mu_gain(const LinkBudget& budget) {
    require_single(budget);
    const double g_ab = budget.cue_to_bs(0);
    const double g_ae = budget.cue_to_eve(0);
    return lambda_underlay_closed(g_ab, g_ae, budget.d2d_to_bs(0), budget.d2d_to_eve(0)) /
           lambda_no_interference(g_ab, g_ae);
}

double nu_gain(const LinkBudget& budget) {
    require_single(budget);
    const double g_dd = budget.d2d_to_rx(0, 0);
    const double g_ad = budget.cue_to_rx(0, 0);
    const auto ratio = [g_dd](double g) { return underlay_capacity_ratio(g_dd, g); };
    const double value =
        std::abs(g_ad / g_dd - 1.0) < kSingularRel ? perturbed(ratio, g_ad) : ratio(g_ad);
    return -value / psi(1.0 / g_dd);
}

double mu_hat(double beta, const LinkBudget& budget, const SchemeConfig& scheme) {
    require_single(budget);
    const double g_ab = budget.cue_to_bs(0);
    const double g_ae = budget.cue_to_eve(0);
    const double underlay =
        1.0 - theta_underlay_closed(scheme.r_s, g_ab, g_ae, budget.d2d_to_bs(0), budget.d2d_to_eve(0));
    return (1.0 - theta_no_interference(scheme.r_s, beta, g_ab, g_ae)) / underlay;
}

double nu_hat(double beta, const LinkBudget& budget, const SchemeConfig& scheme) {
    require_single(budget);
    const double g_dd = budget.d2d_to_rx(0, 0);
    const double underlay = 1.0 - omega_no_interference(scheme.r_t, 1.0, g_dd, budget.cue_to_rx(0, 0));
    return (1.0 - overlay_success(scheme.r_t, 1.0 - beta, g_dd)) / underlay;
}

CaseStudyReport case_study_metrics(const LinkBudget& budget, const SchemeConfig& scheme) {
    require_single(budget);
    const double g_ab = budget.cue_to_bs(0);
    const double g_ae = budget.cue_to_eve(0);
    const double g_db = budget.d2d_to_bs(0);
    const double g_de = budget.d2d_to_eve(0);
    const double g_dd = budget.d2d_to_rx(0, 0);
    const double g_ad = budget.cue_to_rx(0, 0);
    const double p = scheme.p;
    const double beta = scheme.beta;

    const double theta_overlay = theta_no_interference(scheme.r_s, beta, g_ab, g_ae);
    const double theta_underlay = theta_underlay_closed(scheme.r_s, g_ab, g_ae, g_db, g_de);
    const double lam_overlay = lambda_no_interference(g_ab, g_ae);
    const double lam_underlay = lambda_underlay_closed(g_ab, g_ae, g_db, g_de);

    const double omega_underlay = omega_no_interference(scheme.r_t, 1.0, g_dd, g_ad);
    const double success_overlay = overlay_success(scheme.r_t, 1.0 - beta, g_dd);
    const auto cap_ratio = [g_dd](double g) { return underlay_capacity_ratio(g_dd, g); };
    const double underlay_cap =
        std::abs(g_ad / g_dd - 1.0) < kSingularRel ? perturbed(cap_ratio, g_ad) : cap_ratio(g_ad);

    CaseStudyReport out;
    out.report.source = MetricSource::analytic;
    out.report.per_cue.push_back({1.0 - (1.0 - p) * theta_overlay - p * theta_underlay,
                                  (p * lam_underlay + (1.0 - p) * beta * lam_overlay) / kLn2});
    out.report.per_pair.push_back(
        {1.0 - p * omega_underlay - (1.0 - p) * success_overlay,
         (p * underlay_cap - (1.0 - p) * (1.0 - beta) * psi(1.0 / g_dd)) / kLn2});

    const double pow2 = std::exp2(scheme.r_s);
    out.constants.tau = (pow2 - 1.0) / g_ab;
    out.constants.kappa = pow2 * g_ae / g_ab;
    out.constants.eta = out.constants.tau + 1.0 / g_db - out.constants.kappa / g_de;
    out.constants.mu = lam_underlay / lam_overlay;
    out.constants.nu = -underlay_cap / psi(1.0 / g_dd);
    return out;
}

}  // namespace d2dsec
