#pragma once

#include "d2dsec/link_budget.hpp"
#include "d2dsec/metrics.hpp"
#include "d2dsec/model.hpp"

namespace d2dsec {

// Single-CUE single-pair closed forms; no quadrature anywhere in this unit.

struct CaseStudyConstants {
    double tau = 0;    // (2^r_s - 1)/gamma_AB
    double kappa = 0;  // 2^r_s gamma_AE/gamma_AB
    double eta = 0;    // tau + 1/gamma_DB - kappa/gamma_DE
    double mu = 0;     // underlay/overlay ASC gain of the CUE
    double nu = 0;     // underlay/overlay AC gain of the D2D pair
};

struct CaseStudyReport {
    MetricReport report;
    CaseStudyConstants constants;
};

// Non-outage kernel with the single pair underlaying at full band.
double theta_underlay_closed(double r_s, double g_ab, double g_ae, double g_db, double g_de);

// Secrecy-capacity kernel with the single pair underlaying.
double lambda_underlay_closed(double g_ab, double g_ae, double g_db, double g_de);

double mu_gain(const LinkBudget& budget);
double nu_gain(const LinkBudget& budget);

// Underlay security gain of the CUE at partition beta.
double mu_hat(double beta, const LinkBudget& budget, const SchemeConfig& scheme);

// Underlay reliability gain of the D2D pair at partition beta.
double nu_hat(double beta, const LinkBudget& budget, const SchemeConfig& scheme);

// Requires n = 1, m = 1; throws usage_error otherwise.
CaseStudyReport case_study_metrics(const LinkBudget& budget, const SchemeConfig& scheme);

}  // namespace d2dsec
