#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "fairtopk/model.hpp"
#include "fairtopk/objective.hpp"

namespace fairtopk {

/// value[i][j], i = 0..|C|, j = 0..k: best objective over classes 1..i
/// admitting exactly j candidates. Row 0 is the base case (0 at j = 0,
/// -inf otherwise, so exactly k admissions are forced). choice[i][j] is
/// the per-class count taken at the maximizing step, for backtracking.
struct DpTable {
    std::vector<std::vector<double>> value;
    std::vector<std::vector<int>> choice;
    std::uint64_t cell_updates = 0;
};

struct DpResult {
    Selection selection;
    ObjectiveBreakdown breakdown;
    DpTable table;
};

/// Exact maximizer of J over count vectors summing to k.
DpResult solve_dp(const Instance& instance, const PolicyParams& params);

/// Debug dump of the value table as CSV (one row per class prefix).
void dump_table_csv(const DpTable& table, std::ostream& out);

}  // namespace fairtopk
