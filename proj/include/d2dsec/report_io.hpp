#pragma once

#include <iosfwd>

#include "d2dsec/metrics.hpp"
#include "d2dsec/optimize.hpp"

namespace d2dsec {

// Columns entity_type,index,metric,value[,stderr]; indices are 1-based.
void write_metrics_csv(std::ostream& os, const MetricReport& report);

// Single row: problem,p_star,beta_star,beta_any,objective,case.
void write_optimum_csv(std::ostream& os, Problem problem, const Optimum& optimum);

}  // namespace d2dsec
