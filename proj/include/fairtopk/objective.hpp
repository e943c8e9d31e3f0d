#pragma once

#include <cstddef>
#include <vector>

#include "fairtopk/model.hpp"

namespace fairtopk {

/// Per-class prefix contributions: table[i][j] is the objective share of
/// class i when its top j members are admitted, for j = 0..n_i.
struct PrefixContribution {
    std::vector<std::vector<double>> table;
};

/// Scores a selection: B = sum of admitted utilities, D = sum over
/// classes of |counts[i]/n_i - p|, J = B - lambda * D.
/// Throws std::invalid_argument on an infeasible selection, naming the class.
ObjectiveBreakdown evaluate(const Instance& instance, const PolicyParams& params,
                            const Selection& selection);

/// table[i][j] = prefix_utility(i, j) - lambda * |j/n_i - p|.
PrefixContribution prefix_table(const Instance& instance, const PolicyParams& params);

/// Objective delta of admitting one more candidate from class `class_index`
/// given that `current` are already admitted from it.
double marginal_gain_at(const Instance& instance, const PolicyParams& params,
                        std::size_t class_index, std::size_t current);

/// Same as marginal_gain_at, taking the current counts from `selection`.
/// Throws if the class is exhausted.
double marginal_gain(const Instance& instance, const PolicyParams& params,
                     const Selection& selection, std::size_t class_index);

}  // namespace fairtopk
