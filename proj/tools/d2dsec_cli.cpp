#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "d2dsec/case_study.hpp"
#include "d2dsec/errors.hpp"
#include "d2dsec/link_budget.hpp"
#include "d2dsec/metrics.hpp"
#include "d2dsec/model.hpp"
#include "d2dsec/optimize.hpp"
#include "d2dsec/report_io.hpp"
#include "d2dsec/scenario_io.hpp"
#include "d2dsec/sim.hpp"
#include "d2dsec/special.hpp"
#include "scenarios_embedded.hpp"

namespace {

using namespace d2dsec;

constexpr double kLn2 = 0.6931471805599453;

std::string fmt(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

struct OutputTarget {
    std::optional<std::ofstream> file;

    std::ostream& stream() { return file ? static_cast<std::ostream&>(*file) : std::cout; }
};

OutputTarget open_output(const std::string& path) {
    OutputTarget target;
    if (!path.empty()) {
        target.file.emplace(path);
        if (!*target.file) throw usage_error("cannot open output file '" + path + "'");
    }
    return target;
}

Scenario load_with_overrides(const std::string& path, const std::vector<std::string>& overrides) {
    Scenario scenario = load_scenario(path);
    for (const auto& assignment : overrides) apply_override(scenario, assignment);
    validate(scenario);
    return scenario;
}

Scenario embedded_scenario(std::string_view name) {
    for (const auto& entry : embedded::kScenarios) {
        if (entry.name == name) return parse_scenario(std::string(entry.text));
    }
    throw usage_error("no embedded scenario named '" + std::string(name) + "'");
}

int resolve_workers(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("D2DSEC_WORKERS")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || parsed < 0) {
            throw usage_error("D2DSEC_WORKERS must be a non-negative integer, got '" + std::string(env) +
                              "'");
        }
        return static_cast<int>(parsed);
    }
    return 0;
}

std::ofstream open_file(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw usage_error("cannot open output file '" + path.string() + "'");
    return out;
}

// ---- reproduce helpers ----

void reproduce_table2(const std::filesystem::path& dir) {
    auto out = open_file(dir / "table2.csv");
    out << "row,eve_x,eve_y,tx_x,tx_y,sop,asc\n";
    for (int row = 1; row <= 9; ++row) {
        const Scenario sc = embedded_scenario("table2_row" + std::to_string(row));
        const LinkBudget budget = link_budget(sc.topology, sc.radio, sc.scheme);
        const MetricReport report = analytic_report(budget, sc.scheme);
        const Point& eve = sc.topology.eavesdropper;
        const Point& tx = sc.topology.d2d_pairs[0].tx;
        out << row << ',' << fmt(eve.x) << ',' << fmt(eve.y) << ',' << fmt(tx.x) << ',' << fmt(tx.y) << ','
            << fmt(report.per_cue[0].sop) << ',' << fmt(report.per_cue[0].asc) << '\n';
    }
}

void reproduce_table3(const std::filesystem::path& dir) {
    auto out = open_file(dir / "table3.csv");
    out << "row,tx_x,tx_y,rx_x,rx_y,op,ac\n";
    for (int row = 1; row <= 9; ++row) {
        const Scenario sc = embedded_scenario("table3_row" + std::to_string(row));
        const LinkBudget budget = link_budget(sc.topology, sc.radio, sc.scheme);
        const MetricReport report = analytic_report(budget, sc.scheme);
        const D2dPair& pair = sc.topology.d2d_pairs[0];
        out << row << ',' << fmt(pair.tx.x) << ',' << fmt(pair.tx.y) << ',' << fmt(pair.rx.x) << ','
            << fmt(pair.rx.y) << ',' << fmt(report.per_pair[0].op) << ',' << fmt(report.per_pair[0].ac)
            << '\n';
    }
}

void reproduce_fig2(const std::filesystem::path& dir) {
    const Scenario base = embedded_scenario("fig2");
    const std::vector<std::pair<double, double>> combos = {{0.1, 0.0}, {0.1, 0.5}, {0.5, 0.0}, {0.5, 0.5}};
    auto sop_out = open_file(dir / "fig2_sop.csv");
    auto asc_out = open_file(dir / "fig2_asc.csv");
    for (auto* out : {&sop_out, &asc_out}) {
        *out << "y_m";
        for (const auto& [p, beta] : combos) *out << ",p" << fmt(p) << "_beta" << fmt(beta);
        *out << '\n';
    }
    for (int y = 1; y <= 199; ++y) {
        Scenario sc = base;
        sc.topology.d2d_pairs[0].tx = {0.0, static_cast<double>(y)};
        sc.topology.d2d_pairs[0].rx = {10.0, static_cast<double>(y)};
        const LinkBudget budget = link_budget(sc.topology, sc.radio, sc.scheme);
        sop_out << y;
        asc_out << y;
        for (const auto& [p, beta] : combos) {
            SchemeConfig scheme = sc.scheme;
            scheme.p = p;
            scheme.beta = beta;
            const CaseStudyReport cs = case_study_metrics(budget, scheme);
            sop_out << ',' << fmt(cs.report.per_cue[0].sop);
            asc_out << ',' << fmt(cs.report.per_cue[0].asc);
        }
        sop_out << '\n';
        asc_out << '\n';
    }
}

// Closed-form D2D metrics for one pair at SNR ratio g_ad/g_dd, full-band rate
// exponent r_t; the overlay band carries 1-beta of the spectrum.
double fig3_op(double p, double beta, double r_t, double g_dd, double g_ad) {
    double overlay = 0.0;
    if (beta < 1.0) {
        const double exponent = r_t / (1.0 - beta);
        overlay = exponent > 1000.0 ? 0.0 : std::exp(-(std::exp2(exponent) - 1.0) / g_dd);
    }
    return 1.0 - p * omega_no_interference(r_t, 1.0, g_dd, g_ad) - (1.0 - p) * overlay;
}

double fig3_ac(double p, double beta, double g_dd, double g_ad) {
    const auto underlay = [&](double ad) {
        return delta_no_interference(g_dd, ad) / (ad / g_dd - 1.0);
    };
    const double ratio = g_ad / g_dd;
    double term;
    if (std::abs(ratio - 1.0) < 1e-7) {
        term = 0.5 * (underlay(g_ad * (1.0 + 1e-5)) + underlay(g_ad * (1.0 - 1e-5)));
    } else {
        term = underlay(g_ad);
    }
    return (p * term - (1.0 - p) * (1.0 - beta) * psi(1.0 / g_dd)) / kLn2;
}

void reproduce_fig3(const std::filesystem::path& dir) {
    const Scenario base = embedded_scenario("fig3");
    const double r_t = base.scheme.r_t;
    const D2dPair& pair = base.topology.d2d_pairs[0];
    const double g_dd = dbm_to_mw(base.radio.p_d2d_dbm) *
                        std::pow(distance(pair.tx, pair.rx), -base.radio.alpha) /
                        (dbm_to_mw(base.radio.noise_psd_dbm_hz) * base.radio.bandwidth_mhz * 1e6);
    const std::vector<std::pair<double, double>> combos = {{0.1, 0.5}, {0.5, 0.5}, {0.1, 1.0}, {0.5, 1.0}};
    auto op_out = open_file(dir / "fig3_op.csv");
    auto ac_out = open_file(dir / "fig3_ac.csv");
    for (auto* out : {&op_out, &ac_out}) {
        *out << "snr_ratio";
        for (const auto& [p, beta] : combos) *out << ",p" << fmt(p) << "_beta" << fmt(beta);
        *out << '\n';
    }
    for (int k = 0; k <= 40; ++k) {
        const double ratio = std::pow(10.0, -2.0 + 0.1 * k);
        const double g_ad = ratio * g_dd;
        op_out << fmt(ratio);
        ac_out << fmt(ratio);
        for (const auto& [p, beta] : combos) {
            op_out << ',' << fmt(fig3_op(p, beta, r_t, g_dd, g_ad));
            ac_out << ',' << fmt(fig3_ac(p, beta, g_dd, g_ad));
        }
        op_out << '\n';
        ac_out << '\n';
    }
}

void write_surface(const std::filesystem::path& path, const LinkBudget& budget, const SchemeConfig& base,
                   Problem problem) {
    auto out = open_file(path);
    out << "p,beta,objective\n";
    for (int ip = 0; ip <= 50; ++ip) {
        for (int ib = 0; ib <= 50; ++ib) {
            SchemeConfig scheme = base;
            scheme.p = ip / 50.0;
            scheme.beta = ib / 50.0;
            const CaseStudyReport cs = case_study_metrics(budget, scheme);
            const FairnessValue value = fairness_objective(cs.report, scheme.w_c, scheme.w_d, problem);
            out << fmt(scheme.p) << ',' << fmt(scheme.beta) << ',' << fmt(value.value) << '\n';
        }
    }
}

void write_optima_row(std::ostream& out, const std::string& panel, const std::string& method,
                      const Optimum& opt) {
    out << panel << ',' << method << ',' << fmt(opt.p_star) << ',' << fmt(opt.beta_star) << ','
        << (opt.beta_any ? "true" : "false") << ',' << fmt(opt.objective) << ',' << opt.case_label << '\n';
}

void reproduce_fig5(const std::filesystem::path& dir) {
    auto optima = open_file(dir / "fig5_optima.csv");
    optima << "panel,method,p_star,beta_star,beta_any,objective,case\n";
    for (const char* tag : {"a", "b", "c", "d"}) {
        const Scenario sc = embedded_scenario(std::string("fig5") + tag);
        const LinkBudget budget = link_budget(sc.topology, sc.radio, sc.scheme);
        write_surface(dir / (std::string("fig5") + tag + "_surface.csv"), budget, sc.scheme, Problem::p1);
        write_optima_row(optima, tag, "closed", solve_p1_case_study(budget, sc.scheme));
        write_optima_row(optima, tag, "grid", solve_p1(budget, sc.scheme));
    }
}

void reproduce_fig6(const std::filesystem::path& dir) {
    auto optima = open_file(dir / "fig6_optima.csv");
    optima << "panel,method,p_star,beta_star,beta_any,objective,case\n";
    for (const char* tag : {"a", "b"}) {
        const Scenario sc = embedded_scenario(std::string("fig6") + tag);
        const LinkBudget budget = link_budget(sc.topology, sc.radio, sc.scheme);
        write_surface(dir / (std::string("fig6") + tag + "_surface.csv"), budget, sc.scheme, Problem::p2);
        write_optima_row(optima, tag, "closed", solve_p2_case_study(budget, sc.scheme));
        write_optima_row(optima, tag, "grid", solve_p2(budget, sc.scheme));
    }
}

void write_gnuplot(const std::filesystem::path& dir, const std::string& target) {
    auto out = open_file(dir / (target + ".gp"));
    out << "set datafile separator comma\nset key autotitle columnhead\n";
    if (target == "fig2" || target == "fig3") {
        const std::string xlabel = target == "fig2" ? "y of D2D transmitter (m)" : "SNR ratio";
        const std::vector<std::pair<std::string, std::string>> panels =
            target == "fig2"
                ? std::vector<std::pair<std::string, std::string>>{{"fig2_sop.csv", "SOP"},
                                                                   {"fig2_asc.csv", "ASC (bit/s/Hz)"}}
                : std::vector<std::pair<std::string, std::string>>{{"fig3_op.csv", "OP"},
                                                                   {"fig3_ac.csv", "AC (bit/s/Hz)"}};
        if (target == "fig3") out << "set logscale x\n";
        out << "set xlabel '" << xlabel << "'\n";
        for (const auto& [file, ylabel] : panels) {
            out << "set ylabel '" << ylabel << "'\n";
            out << "plot for [col=2:5] '" << file << "' using 1:col with lines\n";
            out << "pause -1\n";
        }
        return;
    }
    out << "set dgrid3d 51,51\nset hidden3d\nset xlabel 'p'\nset ylabel 'beta'\n";
    const std::vector<std::string> tags =
        target == "fig5" ? std::vector<std::string>{"a", "b", "c", "d"} : std::vector<std::string>{"a", "b"};
    for (const auto& tag : tags) {
        out << "splot '" << target << tag << "_surface.csv' using 1:2:3 with lines\n";
        out << "pause -1\n";
    }
}

// ---- subcommand drivers ----

struct CommonArgs {
    std::string scenario_path;
    std::vector<std::string> overrides;
    std::string output;
};

int run_metrics(const CommonArgs& args) {
    const Scenario scenario = load_with_overrides(args.scenario_path, args.overrides);
    const LinkBudget budget = link_budget(scenario.topology, scenario.radio, scenario.scheme);
    const MetricReport report = analytic_report(budget, scenario.scheme);
    OutputTarget out = open_output(args.output);
    write_metrics_csv(out.stream(), report);
    return 0;
}

struct SimulateArgs {
    CommonArgs common;
    long long samples = 1000000;
    int batches = 100;
    std::uint64_t seed = 1;
    int workers = 0;
    std::string batch_csv;
};

int run_simulate(const SimulateArgs& args) {
    const Scenario scenario = load_with_overrides(args.common.scenario_path, args.common.overrides);
    if (args.samples < 1) throw usage_error("--samples must be at least 1");
    if (args.batches < 1) throw usage_error("--batches must be at least 1");
    SimulationPlan plan;
    plan.samples_per_batch = args.samples;
    plan.batches = args.batches;
    plan.seed = args.seed;
    plan.parallelism = resolve_workers(args.workers);
    const SimReport report = simulate(scenario, plan);
    OutputTarget out = open_output(args.common.output);
    write_metrics_csv(out.stream(), report.to_metric_report());
    if (!args.batch_csv.empty()) {
        auto batch_out = open_file(args.batch_csv);
        write_batch_csv(batch_out, report);
    }
    return 0;
}

struct OptimizeArgs {
    CommonArgs common;
    std::string problem = "p1";
    int grid = 0;
    bool no_refine = false;
    std::string method = "auto";
    std::vector<double> weights;
};

int run_optimize(const OptimizeArgs& args) {
    Scenario scenario = load_with_overrides(args.common.scenario_path, args.common.overrides);
    if (!args.weights.empty()) {
        if (args.weights.size() != 2) throw usage_error("--weights needs two values: w_c,w_d");
        scenario.scheme.w_c = args.weights[0];
        scenario.scheme.w_d = args.weights[1];
        validate(scenario.scheme);
    }
    const Problem problem = args.problem == "p1" ? Problem::p1 : Problem::p2;
    GridSpec grid;
    if (args.grid > 0) {
        if (args.grid < 2) throw usage_error("--grid needs at least 2 points");
        grid.p_points = args.grid;
        grid.beta_points = args.grid;
    }
    grid.refine = !args.no_refine;
    const LinkBudget budget = link_budget(scenario.topology, scenario.radio, scenario.scheme);
    const bool single = scenario.topology.n() == 1 && scenario.topology.m() == 1;
    bool closed = single;
    if (args.method == "closed") {
        if (!single) throw usage_error("--method closed needs a single-CUE single-pair scenario");
        closed = true;
    } else if (args.method == "grid") {
        closed = false;
    }
    Optimum optimum;
    if (problem == Problem::p1) {
        optimum = closed ? solve_p1_case_study(budget, scenario.scheme)
                         : solve_p1(budget, scenario.scheme, grid);
    } else {
        optimum = closed ? solve_p2_case_study(budget, scenario.scheme)
                         : solve_p2(budget, scenario.scheme, grid);
    }
    OutputTarget out = open_output(args.common.output);
    write_optimum_csv(out.stream(), problem, optimum);
    return 0;
}

struct ReproduceArgs {
    std::string target;
    std::string output_dir = ".";
    bool gnuplot = false;
};

int run_reproduce(const ReproduceArgs& args) {
    const std::filesystem::path dir(args.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw usage_error("cannot create output directory '" + args.output_dir + "'");
    if (args.target == "table2") {
        reproduce_table2(dir);
    } else if (args.target == "table3") {
        reproduce_table3(dir);
    } else if (args.target == "fig2") {
        reproduce_fig2(dir);
    } else if (args.target == "fig3") {
        reproduce_fig3(dir);
    } else if (args.target == "fig5") {
        reproduce_fig5(dir);
    } else {
        reproduce_fig6(dir);
    }
    if (args.gnuplot) {
        if (args.target == "table2" || args.target == "table3") {
            std::cerr << "note: no plot script for tabular targets\n";
        } else {
            write_gnuplot(dir, args.target);
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Physical-layer security metrics for cellular networks with inband D2D pairs"};
    app.require_subcommand(1);

    CommonArgs metrics_args;
    auto* metrics_cmd = app.add_subcommand("metrics", "Exact analytic metrics for a scenario");
    metrics_cmd->add_option("scenario", metrics_args.scenario_path, "Scenario file")->required();
    metrics_cmd->add_option("--set", metrics_args.overrides, "Override section.key=value")->type_size(1);
    metrics_cmd->add_option("-o,--output", metrics_args.output, "Write CSV here instead of stdout");

    SimulateArgs sim_args;
    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo metrics for a scenario");
    simulate_cmd->add_option("scenario", sim_args.common.scenario_path, "Scenario file")->required();
    simulate_cmd->add_option("--set", sim_args.common.overrides, "Override section.key=value")->type_size(1);
    simulate_cmd->add_option("-o,--output", sim_args.common.output, "Write CSV here instead of stdout");
    simulate_cmd->add_option("--samples", sim_args.samples, "Samples per batch");
    simulate_cmd->add_option("--batches", sim_args.batches, "Batch count");
    simulate_cmd->add_option("--seed", sim_args.seed, "RNG seed");
    simulate_cmd->add_option("--workers", sim_args.workers,
                             "Worker threads (default: D2DSEC_WORKERS or all cores)");
    simulate_cmd->add_option("--batch-csv", sim_args.batch_csv, "Also write raw batch means here");

    OptimizeArgs opt_args;
    auto* optimize_cmd = app.add_subcommand("optimize", "Solve the joint (p, beta) selection problem");
    optimize_cmd->add_option("scenario", opt_args.common.scenario_path, "Scenario file")->required();
    optimize_cmd->add_option("--set", opt_args.common.overrides, "Override section.key=value")->type_size(1);
    optimize_cmd->add_option("-o,--output", opt_args.common.output, "Write CSV here instead of stdout");
    optimize_cmd->add_option("--problem", opt_args.problem, "Objective family")
        ->check(CLI::IsMember({"p1", "p2"}))
        ->required();
    optimize_cmd->add_option("--grid", opt_args.grid, "Grid points per axis for the search");
    optimize_cmd->add_flag("--no-refine", opt_args.no_refine, "Skip the golden-section refinement pass");
    optimize_cmd->add_option("--method", opt_args.method, "Solver selection")
        ->check(CLI::IsMember({"auto", "closed", "grid"}));
    optimize_cmd->add_option("--weights", opt_args.weights, "Override weights as w_c,w_d")
        ->delimiter(',')
        ->expected(1, 2);

    ReproduceArgs repro_args;
    auto* reproduce_cmd = app.add_subcommand("reproduce", "Regenerate the published tables and figures");
    reproduce_cmd->add_option("target", repro_args.target, "One of table2 table3 fig2 fig3 fig5 fig6")
        ->required()
        ->check(CLI::IsMember({"table2", "table3", "fig2", "fig3", "fig5", "fig6"}));
    reproduce_cmd->add_option("--output-dir", repro_args.output_dir, "Directory for the CSV files");
    reproduce_cmd->add_flag("--gnuplot-script", repro_args.gnuplot, "Also emit a gnuplot script");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (metrics_cmd->parsed()) return run_metrics(metrics_args);
        if (simulate_cmd->parsed()) return run_simulate(sim_args);
        if (optimize_cmd->parsed()) return run_optimize(opt_args);
        return run_reproduce(repro_args);
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const geometry_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const capacity_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const quadrature_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const numerical_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
