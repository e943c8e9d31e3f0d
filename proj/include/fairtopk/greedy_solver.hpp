#pragma once

#include <cstdint>

#include "fairtopk/model.hpp"
#include "fairtopk/objective.hpp"

namespace fairtopk {

/// op_count tallies marginal-gain evaluations plus priority-structure
/// operations, so the two variants can be compared platform-independently.
struct GreedyResult {
    Selection selection;
    ObjectiveBreakdown breakdown;
    std::uint64_t op_count = 0;
};

/// k rounds; each round re-evaluates every class frontier and admits the
/// candidate with the largest marginal gain (ties: lowest class index).
GreedyResult solve_greedy_naive(const Instance& instance, const PolicyParams& params);

/// Same decision rule, but per-class gain sequences are precomputed and
/// consumed through a priority queue keyed on each class's current head.
/// Returns the identical selection to the naive variant.
GreedyResult solve_greedy_merged(const Instance& instance, const PolicyParams& params);

}  // namespace fairtopk
