// fairtopk: fairness-aware top-k candidate selection over intersectional
// classes. Subcommands: solve, sweep, gen, oracle, stats.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fairtopk/dp_solver.hpp"
#include "fairtopk/experiments.hpp"
#include "fairtopk/greedy_solver.hpp"
#include "fairtopk/ingestion.hpp"
#include "fairtopk/lp_solver.hpp"
#include "fairtopk/model.hpp"
#include "fairtopk/objective.hpp"
#include "fairtopk/oracle.hpp"
#include "fairtopk/svg.hpp"

namespace {

using namespace fairtopk;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

std::string num(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", value);
    return buf;
}

struct CommonInput {
    std::string input_path;
    std::string coding_path;
};

Instance load_input(const CommonInput& common) {
    const CodingConfig coding = CodingConfig::from_json_file(common.coding_path);
    return load_csv(common.input_path, coding);
}

struct QuotaFlags {
    std::optional<std::size_t> quota;
    std::optional<double> rate;
};

PolicyParams make_params(const Instance& instance, const QuotaFlags& flags, double lambda) {
    if (flags.quota.has_value() == flags.rate.has_value())
        throw std::invalid_argument("exactly one of --k and --rate is required");
    if (flags.quota)
        return PolicyParams::from_quota(*flags.quota, instance, lambda);
    return PolicyParams::from_rate(*flags.rate, instance, lambda);
}

void print_breakdown(std::ostream& out, const Instance& instance, const PolicyParams& params,
                     const Selection& selection, const ObjectiveBreakdown& breakdown) {
    out << "# J=" << num(breakdown.total) << " B=" << num(breakdown.utility)
        << " D=" << num(breakdown.discrepancy) << " lambda=" << num(params.tradeoff)
        << " k=" << params.quota << " n=" << instance.total_candidates
        << " p=" << num(params.selection_rate) << "\n";
    out << "label,admitted,size,rate,discrepancy,utility\n";
    for (std::size_t i = 0; i < instance.num_classes(); ++i) {
        const auto& cls = instance.classes[i];
        out << cls.label << ',' << selection.counts[i] << ',' << cls.size() << ','
            << num(static_cast<double>(selection.counts[i]) / static_cast<double>(cls.size()))
            << ',' << num(breakdown.per_class_discrepancy[i]) << ','
            << num(breakdown.per_class_utility[i]) << "\n";
    }
}

void print_selected(std::ostream& out, const Instance& instance, const Selection& selection) {
    out << "id,class,score\n";
    for (std::size_t i = 0; i < instance.num_classes(); ++i) {
        const auto& cls = instance.classes[i];
        for (std::size_t j = 0; j < selection.counts[i]; ++j)
            out << cls.members[j].id << ',' << cls.label << ',' << num(cls.members[j].score)
                << "\n";
    }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
    return out;
}

int cmd_solve(const CommonInput& common, const QuotaFlags& quota, double lambda,
              const std::string& solver, const std::string& out_path,
              const std::string& dump_table_path) {
    Instance instance = load_input(common);
    PolicyParams params = make_params(instance, quota, lambda);

    Selection selection;
    ObjectiveBreakdown breakdown;
    std::string extra;
    if (solver == "dp") {
        DpResult result = solve_dp(instance, params);
        if (!dump_table_path.empty()) {
            auto table_out = open_out(dump_table_path);
            dump_table_csv(result.table, table_out);
        }
        selection = std::move(result.selection);
        breakdown = std::move(result.breakdown);
    } else if (solver == "greedy" || solver == "greedy-merged") {
        GreedyResult result = solver == "greedy" ? solve_greedy_naive(instance, params)
                                                 : solve_greedy_merged(instance, params);
        extra = "# op_count=" + std::to_string(result.op_count) + "\n";
        selection = std::move(result.selection);
        breakdown = std::move(result.breakdown);
    } else if (solver == "lp") {
        LpRelaxationResult relaxed = solve_lp_relaxation(instance, params);
        RoundedResult rounded = round_lp(relaxed.fractional, instance, params);
        extra = "# relaxed_J=" + num(relaxed.objective) + " rounding_gap=" + num(rounded.gap) +
                "\n";
        selection = std::move(rounded.selection);
        breakdown = std::move(rounded.breakdown);
    } else {
        throw std::invalid_argument("unknown solver '" + solver + "'");
    }

    print_breakdown(std::cout, instance, params, selection, breakdown);
    std::cout << extra;
    if (!out_path.empty()) {
        auto out = open_out(out_path);
        print_selected(out, instance, selection);
    } else {
        print_selected(std::cout, instance, selection);
    }
    return kExitOk;
}

int cmd_oracle(const CommonInput& common, const QuotaFlags& quota, double lambda) {
    Instance instance = load_input(common);
    PolicyParams params = make_params(instance, quota, lambda);
    CountOracleResult best = oracle_counts(instance, params);
    const ObjectiveBreakdown breakdown = evaluate(instance, params, best.selection);
    print_breakdown(std::cout, instance, params, best.selection, breakdown);
    return kExitOk;
}

int cmd_stats(const CommonInput& common, const std::string& out_path) {
    Instance instance = load_input(common);
    const auto stats = class_stats(instance);
    if (!out_path.empty()) {
        auto out = open_out(out_path);
        write_stats_csv(stats, out);
    } else {
        write_stats_csv(stats, std::cout);
    }
    return kExitOk;
}

int cmd_gen(const std::string& spec_path, const std::string& out_path,
            const std::string& coding_out, std::optional<std::uint64_t> seed_override) {
    SyntheticSpec spec = SyntheticSpec::from_json_file(spec_path);
    if (seed_override) spec.seed = *seed_override;
    Instance instance = generate_synthetic(spec);
    auto out = open_out(out_path);
    write_instance_csv(instance, out);
    if (!coding_out.empty()) {
        auto coding_stream = open_out(coding_out);
        coding_stream << identity_coding(instance).to_json_text();
    }
    std::cout << "wrote " << instance.total_candidates << " candidates in "
              << instance.num_classes() << " classes to " << out_path << "\n";
    return kExitOk;
}

std::string rate_tag(double rate) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", rate);
    return buf;
}

int cmd_sweep(const CommonInput& common, const SweepConfig& config,
              const std::string& out_dir) {
    Instance loaded = load_input(common);
    FilterResult filtered = filter_small_classes(loaded, config.min_class_size);
    for (const auto& label : filtered.removed_labels)
        std::cout << "note: class " << label << " below minimum size, ignored\n";

    for (double rate : config.rates) {
        SweepRun run = run_sweep(filtered.instance, rate, config);
        const std::string tag = rate_tag(rate);
        {
            auto out = open_out(out_dir + "/results_p" + tag + ".csv");
            write_results_csv(run, out);
        }
        {
            auto out = open_out(out_dir + "/per_class_p" + tag + ".csv");
            write_per_class_csv(run, out);
        }
        {
            auto out = open_out(out_dir + "/tradeoff_p" + tag + ".svg");
            write_tradeoff_svg(run, out);
        }
        {
            auto out = open_out(out_dir + "/classes_p" + tag + ".svg");
            write_classes_svg(run, out);
        }
        std::cout << "p=" << tag << ": " << run.results.size() << " lambda points, "
                  << (run.parity_reached ? "parity reached" : "warning: parity not reached")
                  << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fairness-aware top-k candidate selection"};
    app.require_subcommand(1);

    CommonInput common;
    QuotaFlags quota_flags;
    double lambda = 0.0;
    std::string solver = "dp";
    std::string out_path;
    std::string out_dir;
    std::string dump_table_path;
    std::string spec_path;
    std::string coding_out;
    std::optional<std::uint64_t> seed_override;
    SweepConfig sweep_config;
    std::string stop_on = "mean";

    const auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("--input", common.input_path, "Candidate CSV file")->required();
        cmd->add_option("--coding", common.coding_path, "Attribute coding JSON")->required();
    };
    const auto add_quota = [&](CLI::App* cmd) {
        cmd->add_option("--k", quota_flags.quota, "Number of candidates to select");
        cmd->add_option("--rate", quota_flags.rate, "Target selection rate in [0, 1]");
    };

    CLI::App* solve = app.add_subcommand("solve", "Solve one selection problem");
    add_input(solve);
    add_quota(solve);
    solve->add_option("--lambda", lambda, "Trade-off weight, utility per discrepancy unit");
    solve->add_option("--solver", solver, "dp | greedy | greedy-merged | lp")
        ->check(CLI::IsMember({"dp", "greedy", "greedy-merged", "lp"}));
    solve->add_option("--out", out_path, "Write selected candidates CSV here");
    solve->add_option("--dump-table", dump_table_path, "Dump the DP value table as CSV");

    CLI::App* sweep = app.add_subcommand("sweep", "Lambda sweep per target rate");
    add_input(sweep);
    sweep->add_option("--rates", sweep_config.rates, "Target rates")->delimiter(',');
    sweep->add_option("--threshold", sweep_config.parity_threshold,
                      "Stop once discrepancy falls below this");
    sweep->add_option("--stop-on", stop_on, "mean | total discrepancy stopping metric")
        ->check(CLI::IsMember({"mean", "total"}));
    sweep->add_option("--min-class-size", sweep_config.min_class_size,
                      "Ignore classes smaller than this");
    sweep
        ->add_option_function<std::string>(
            "--solver",
            [&](const std::string& name) {
                sweep_config.solver = name == "dp"       ? SweepSolver::dp
                                      : name == "greedy" ? SweepSolver::greedy
                                                         : SweepSolver::lp;
            },
            "dp | greedy | lp")
        ->check(CLI::IsMember({"dp", "greedy", "lp"}));
    sweep->add_option("--max-doublings", sweep_config.max_doublings,
                      "Lambda grid length beyond the unit step");
    sweep->add_option("--out-dir", out_dir, "Directory for CSV/SVG outputs")->required();

    CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic candidate pool");
    gen->add_option("--spec", spec_path, "Synthetic spec JSON")->required();
    gen->add_option("--out", out_path, "Output CSV path")->required();
    gen->add_option("--coding-out", coding_out, "Also write the matching coding JSON");
    gen->add_option("--seed", seed_override, "Override the spec's seed");

    CLI::App* oracle = app.add_subcommand("oracle", "Exhaustive optimum (size-guarded)");
    add_input(oracle);
    add_quota(oracle);
    oracle->add_option("--lambda", lambda, "Trade-off weight");

    CLI::App* stats = app.add_subcommand("stats", "Per-class score statistics");
    add_input(stats);
    stats->add_option("--out", out_path, "Write stats CSV here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (solve->parsed())
            return cmd_solve(common, quota_flags, lambda, solver, out_path, dump_table_path);
        if (sweep->parsed()) {
            sweep_config.stop_on_mean = stop_on == "mean";
            return cmd_sweep(common, sweep_config, out_dir);
        }
        if (gen->parsed()) return cmd_gen(spec_path, out_path, coding_out, seed_override);
        if (oracle->parsed()) return cmd_oracle(common, quota_flags, lambda);
        if (stats->parsed()) return cmd_stats(common, out_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
