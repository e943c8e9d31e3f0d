#include "fairtopk/dp_solver.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace fairtopk {

DpResult solve_dp(const Instance& instance, const PolicyParams& params) {
    const std::size_t num_classes = instance.num_classes();
    const std::size_t k = params.quota;
    if (k > instance.total_candidates)
        throw std::invalid_argument("solve_dp: quota exceeds candidate count");

    const PrefixContribution contribution = prefix_table(instance, params);
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();

    DpTable table;
    table.value.assign(num_classes + 1, std::vector<double>(k + 1, kNegInf));
    table.choice.assign(num_classes + 1, std::vector<int>(k + 1, -1));
    table.value[0][0] = 0.0;

    for (std::size_t i = 1; i <= num_classes; ++i) {
        const auto& row = contribution.table[i - 1];
        const std::size_t class_size = instance.classes[i - 1].size();
        for (std::size_t j = 0; j <= k; ++j) {
            const std::size_t max_take = std::min(j, class_size);
            double best = kNegInf;
            int best_take = -1;
            for (std::size_t m = 0; m <= max_take; ++m) {
                ++table.cell_updates;
                const double candidate = row[m] + table.value[i - 1][j - m];
                if (candidate > best) {  // smallest m wins ties
                    best = candidate;
                    best_take = static_cast<int>(m);
                }
            }
            table.value[i][j] = best;
            table.choice[i][j] = best_take;
        }
    }

    DpResult result;
    result.selection.counts.assign(num_classes, 0);
    std::size_t budget = k;
    for (std::size_t i = num_classes; i >= 1; --i) {
        const int take = table.choice[i][budget];
        if (take < 0)
            throw std::runtime_error("solve_dp: backtracking hit an infeasible cell");
        result.selection.counts[i - 1] = static_cast<std::size_t>(take);
        budget -= static_cast<std::size_t>(take);
    }
    result.breakdown = evaluate(instance, params, result.selection);
    result.table = std::move(table);
    return result;
}

void dump_table_csv(const DpTable& table, std::ostream& out) {
    if (table.value.empty()) return;
    out << "class_prefix";
    for (std::size_t j = 0; j < table.value[0].size(); ++j) out << ",j" << j;
    out << "\n";
    char buf[64];
    for (std::size_t i = 0; i < table.value.size(); ++i) {
        out << i;
        for (double v : table.value[i]) {
            std::snprintf(buf, sizeof(buf), "%.9g", v);
            out << ',' << buf;
        }
        out << "\n";
    }
}

}  // namespace fairtopk
