#include "fairtopk/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "fairtopk/csv.hpp"
#include "fairtopk/dp_solver.hpp"
#include "fairtopk/greedy_solver.hpp"
#include "fairtopk/lp_solver.hpp"
#include "fairtopk/objective.hpp"

namespace fairtopk {

namespace {

ObjectiveBreakdown solve_point(const Instance& instance, const PolicyParams& params,
                               SweepSolver solver, Selection& selection_out) {
    switch (solver) {
        case SweepSolver::dp: {
            auto result = solve_dp(instance, params);
            selection_out = std::move(result.selection);
            return result.breakdown;
        }
        case SweepSolver::greedy: {
            auto result = solve_greedy_merged(instance, params);
            selection_out = std::move(result.selection);
            return result.breakdown;
        }
        case SweepSolver::lp: {
            auto relaxed = solve_lp_relaxation(instance, params);
            auto rounded = round_lp(relaxed.fractional, instance, params);
            selection_out = std::move(rounded.selection);
            return rounded.breakdown;
        }
    }
    throw std::logic_error("run_sweep: unknown solver");
}

SweepResult make_result(const Instance& instance, const PolicyParams& params,
                        const Selection& selection, const ObjectiveBreakdown& breakdown,
                        double baseline_avg_utility, double parity_threshold,
                        bool stop_on_mean) {
    SweepResult point;
    point.lambda = params.tradeoff;
    point.k = params.quota;
    point.total_utility = breakdown.utility;
    point.avg_utility =
        params.quota == 0 ? 0.0 : breakdown.utility / static_cast<double>(params.quota);
    point.avg_utility_decrease = baseline_avg_utility - point.avg_utility;
    point.total_discrepancy = breakdown.discrepancy;
    point.mean_discrepancy =
        breakdown.discrepancy / static_cast<double>(instance.num_classes());
    point.per_class_discrepancy = breakdown.per_class_discrepancy;
    point.admitted = selection.counts;
    point.per_class_rate.resize(instance.num_classes());
    for (std::size_t i = 0; i < instance.num_classes(); ++i)
        point.per_class_rate[i] = static_cast<double>(selection.counts[i]) /
                                  static_cast<double>(instance.classes[i].size());
    const double watched = stop_on_mean ? point.mean_discrepancy : point.total_discrepancy;
    point.parity_reached = watched < parity_threshold;
    return point;
}

}  // namespace

SweepRun run_sweep(const Instance& instance, double rate, const SweepConfig& config) {
    if (!(config.parity_threshold > 0.0))
        throw std::invalid_argument("run_sweep: parity threshold must be > 0");
    if (!(rate > 0.0 && rate <= 1.0))
        throw std::invalid_argument("run_sweep: rate must lie in (0, 1]");

    SweepRun run;
    run.rate = rate;
    for (const auto& cls : instance.classes) run.class_labels.push_back(cls.label);

    // Baseline lambda = 0 row fixes k and the utility reference.
    PolicyParams params = PolicyParams::from_rate(rate, instance, 0.0);
    run.k = params.quota;
    Selection selection;
    ObjectiveBreakdown breakdown = solve_point(instance, params, config.solver, selection);
    const double baseline_avg =
        params.quota == 0 ? 0.0 : breakdown.utility / static_cast<double>(params.quota);
    run.results.push_back(make_result(instance, params, selection, breakdown, baseline_avg,
                                      config.parity_threshold, config.stop_on_mean));
    if (run.results.back().parity_reached) {
        run.parity_reached = true;
        return run;
    }

    double lambda_unit = baseline_avg / static_cast<double>(instance.num_classes());
    if (!(lambda_unit > 0.0) || !std::isfinite(lambda_unit)) lambda_unit = 1.0;

    for (int m = 0; m <= config.max_doublings; ++m) {
        params.tradeoff = lambda_unit * std::ldexp(1.0, m);
        breakdown = solve_point(instance, params, config.solver, selection);
        run.results.push_back(make_result(instance, params, selection, breakdown, baseline_avg,
                                          config.parity_threshold, config.stop_on_mean));
        if (run.results.back().parity_reached) {
            run.parity_reached = true;
            break;
        }
    }
    return run;
}

std::vector<TrackOutcome> run_separate_tracks(const std::vector<TrackPool>& pools,
                                              const SweepConfig& config) {
    std::vector<TrackOutcome> outcomes;
    outcomes.reserve(pools.size());
    for (const auto& pool : pools) {
        TrackOutcome outcome;
        outcome.program_id = pool.program_id;
        try {
            FilterResult filtered = filter_small_classes(pool.instance, config.min_class_size);
            outcome.removed_classes = std::move(filtered.removed_labels);
            outcome.run = run_sweep(filtered.instance, pool.rate, config);
        } catch (const std::invalid_argument&) {
            outcome.skipped = true;
        }
        outcomes.push_back(std::move(outcome));
    }
    return outcomes;
}

namespace {

std::string num(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", value);
    return buf;
}

}  // namespace

void write_results_csv(const SweepRun& run, std::ostream& out) {
    out << "lambda,k,total_utility,avg_utility,avg_utility_decrease,mean_discrepancy,"
           "parity_reached\n";
    for (const auto& point : run.results) {
        csv::write_row(out, {num(point.lambda), std::to_string(point.k),
                             num(point.total_utility), num(point.avg_utility),
                             num(point.avg_utility_decrease), num(point.mean_discrepancy),
                             point.parity_reached ? "1" : "0"});
    }
}

void write_per_class_csv(const SweepRun& run, std::ostream& out) {
    out << "lambda,class_label,rate,discrepancy,admitted\n";
    for (const auto& point : run.results)
        for (std::size_t i = 0; i < run.class_labels.size(); ++i)
            csv::write_row(out, {num(point.lambda), run.class_labels[i],
                                 num(point.per_class_rate[i]),
                                 num(point.per_class_discrepancy[i]),
                                 std::to_string(point.admitted[i])});
}

}  // namespace fairtopk
