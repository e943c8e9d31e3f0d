#include "fairtopk/objective.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fairtopk {

namespace {

double rate_gap(std::size_t admitted, std::size_t class_size, double target_rate) {
    return std::fabs(static_cast<double>(admitted) / static_cast<double>(class_size) -
                     target_rate);
}

}  // namespace

ObjectiveBreakdown evaluate(const Instance& instance, const PolicyParams& params,
                            const Selection& selection) {
    const std::size_t num_classes = instance.num_classes();
    if (selection.counts.size() != num_classes)
        throw std::invalid_argument("evaluate: selection has " +
                                    std::to_string(selection.counts.size()) +
                                    " entries for " + std::to_string(num_classes) + " classes");

    ObjectiveBreakdown breakdown;
    breakdown.lambda = params.tradeoff;
    breakdown.per_class_utility.resize(num_classes, 0.0);
    breakdown.per_class_discrepancy.resize(num_classes, 0.0);

    for (std::size_t i = 0; i < num_classes; ++i) {
        const auto& cls = instance.classes[i];
        const std::size_t count = selection.counts[i];
        if (count > cls.size())
            throw std::invalid_argument("evaluate: class '" + cls.label + "' selects " +
                                        std::to_string(count) + " of " +
                                        std::to_string(cls.size()) + " members");
        double class_utility = 0.0;
        for (std::size_t j = 0; j < count; ++j) class_utility += cls.utilities[j];
        breakdown.per_class_utility[i] = class_utility;
        breakdown.per_class_discrepancy[i] = rate_gap(count, cls.size(), params.selection_rate);
        breakdown.utility += class_utility;
        breakdown.discrepancy += breakdown.per_class_discrepancy[i];
    }
    breakdown.total = breakdown.utility - params.tradeoff * breakdown.discrepancy;
    return breakdown;
}

PrefixContribution prefix_table(const Instance& instance, const PolicyParams& params) {
    PrefixContribution contribution;
    contribution.table.resize(instance.num_classes());
    for (std::size_t i = 0; i < instance.num_classes(); ++i) {
        const auto& cls = instance.classes[i];
        auto& row = contribution.table[i];
        row.resize(cls.size() + 1);
        double prefix = 0.0;
        row[0] = -params.tradeoff * rate_gap(0, cls.size(), params.selection_rate);
        for (std::size_t j = 1; j <= cls.size(); ++j) {
            prefix += cls.utilities[j - 1];
            row[j] = prefix - params.tradeoff * rate_gap(j, cls.size(), params.selection_rate);
        }
    }
    return contribution;
}

double marginal_gain_at(const Instance& instance, const PolicyParams& params,
                        std::size_t class_index, std::size_t current) {
    const auto& cls = instance.classes.at(class_index);
    if (current >= cls.size())
        throw std::invalid_argument("marginal_gain: class '" + cls.label + "' is exhausted");
    const double next_utility = cls.utilities[current];
    const double penalty_delta = rate_gap(current + 1, cls.size(), params.selection_rate) -
                                 rate_gap(current, cls.size(), params.selection_rate);
    return next_utility - params.tradeoff * penalty_delta;
}

double marginal_gain(const Instance& instance, const PolicyParams& params,
                     const Selection& selection, std::size_t class_index) {
    return marginal_gain_at(instance, params, class_index, selection.counts.at(class_index));
}

}  // namespace fairtopk
