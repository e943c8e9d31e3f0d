#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fairtopk/model.hpp"

namespace fairtopk {

enum class SweepSolver { dp, greedy, lp };

struct SweepConfig {
    std::vector<double> rates = {0.05, 0.15, 0.30, 0.50};
    double parity_threshold = 0.01;
    bool stop_on_mean = true;  // false: stop on total D instead of D/|C|
    std::size_t min_class_size = 1;
    SweepSolver solver = SweepSolver::dp;
    int max_doublings = 24;
};

/// One lambda point of a trade-off curve.
struct SweepResult {
    double lambda = 0.0;
    std::size_t k = 0;
    double total_utility = 0.0;
    double avg_utility = 0.0;
    double avg_utility_decrease = 0.0;  // vs the lambda = 0 baseline
    double mean_discrepancy = 0.0;      // D / |C|
    double total_discrepancy = 0.0;     // D
    std::vector<double> per_class_rate;
    std::vector<double> per_class_discrepancy;
    std::vector<std::size_t> admitted;
    bool parity_reached = false;
};

struct SweepRun {
    double rate = 0.0;
    std::size_t k = 0;
    std::vector<std::string> class_labels;
    std::vector<SweepResult> results;
    bool parity_reached = false;
};

/// Sweeps lambda over {0} then lambda_unit * 2^m, m = 0..max_doublings,
/// with lambda_unit = (top-k mean utility at lambda 0) / |C|. Stops at the
/// first point whose discrepancy falls below the parity threshold (that
/// point included). Never errors on an unreached parity; the run's flag
/// reports it.
SweepRun run_sweep(const Instance& instance, double rate, const SweepConfig& config);

struct TrackPool {
    std::string program_id;
    Instance instance;
    double rate = 0.0;
};

struct TrackOutcome {
    std::string program_id;
    bool skipped = false;  // no class survived the min-size filter
    std::vector<std::string> removed_classes;
    SweepRun run;
};

/// Independent sweep per program pool; classes below min_class_size are
/// dropped per pool before solving. A pool with no surviving classes is
/// flagged and skipped, the rest still run.
std::vector<TrackOutcome> run_separate_tracks(const std::vector<TrackPool>& pools,
                                              const SweepConfig& config);

void write_results_csv(const SweepRun& run, std::ostream& out);
void write_per_class_csv(const SweepRun& run, std::ostream& out);

}  // namespace fairtopk
