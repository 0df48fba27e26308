#include "d2dsec/report_io.hpp"

#include <cstdio>
#include <ostream>
#include <string>

namespace d2dsec {

namespace {

std::string fmt(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

void row(std::ostream& os, const char* entity, std::size_t index, const char* metric, double value,
         const double* err) {
    os << entity << ',' << index << ',' << metric << ',' << fmt(value);
    if (err != nullptr) os << ',' << fmt(*err);
    os << '\n';
}

}  // namespace

void write_metrics_csv(std::ostream& os, const MetricReport& report) {
    const bool with_err = report.cue_stderr.has_value() && report.pair_stderr.has_value();
    os << "entity_type,index,metric,value";
    if (with_err) os << ",stderr";
    os << '\n';
    for (std::size_t i = 0; i < report.per_cue.size(); ++i) {
        const double* sop_err = with_err ? &(*report.cue_stderr)[i].sop : nullptr;
        const double* asc_err = with_err ? &(*report.cue_stderr)[i].asc : nullptr;
        row(os, "cue", i + 1, "sop", report.per_cue[i].sop, sop_err);
        row(os, "cue", i + 1, "asc", report.per_cue[i].asc, asc_err);
    }
    for (std::size_t j = 0; j < report.per_pair.size(); ++j) {
        const double* op_err = with_err ? &(*report.pair_stderr)[j].op : nullptr;
        const double* ac_err = with_err ? &(*report.pair_stderr)[j].ac : nullptr;
        row(os, "d2d_pair", j + 1, "op", report.per_pair[j].op, op_err);
        row(os, "d2d_pair", j + 1, "ac", report.per_pair[j].ac, ac_err);
    }
}

void write_optimum_csv(std::ostream& os, Problem problem, const Optimum& optimum) {
    os << "problem,p_star,beta_star,beta_any,objective,case\n";
    os << (problem == Problem::p1 ? "p1" : "p2") << ',' << fmt(optimum.p_star) << ','
       << fmt(optimum.beta_star) << ',' << (optimum.beta_any ? "true" : "false") << ','
       << fmt(optimum.objective) << ',' << optimum.case_label << '\n';
}

}  // namespace d2dsec
