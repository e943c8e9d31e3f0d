#pragma once

#include <cstdint>
#include <vector>

#include "fairtopk/model.hpp"
#include "fairtopk/objective.hpp"

namespace fairtopk {

struct CountOracleResult {
    Selection selection;
    double objective = 0.0;
};

/// Exhaustive maximum over all count vectors summing to k (ties:
/// lexicographically smallest counts). Guarded to at most 1e7 compositions.
CountOracleResult oracle_counts(const Instance& instance, const PolicyParams& params);

struct SubsetOracleResult {
    std::uint32_t selected_mask = 0;  // bit b = candidate b in class-major order
    double objective = 0.0;
};

/// Exhaustive maximum over all C(n, k) candidate subsets, scored on the
/// per-candidate bit representation. Requires n <= 20.
SubsetOracleResult oracle_subsets(const Instance& instance, const PolicyParams& params);

/// Number of count compositions the counts oracle would enumerate
/// (capped at 2^63-1), exposed for the size guard message.
std::uint64_t composition_bound(const Instance& instance, const PolicyParams& params);

}  // namespace fairtopk
