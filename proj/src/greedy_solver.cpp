#include "fairtopk/greedy_solver.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <vector>

namespace fairtopk {

namespace {

void check_quota(const Instance& instance, const PolicyParams& params) {
    if (params.quota > instance.total_candidates)
        throw std::invalid_argument("solve_greedy: quota exceeds candidate count");
}

}  // namespace

GreedyResult solve_greedy_naive(const Instance& instance, const PolicyParams& params) {
    check_quota(instance, params);
    const std::size_t num_classes = instance.num_classes();

    GreedyResult result;
    result.selection.counts.assign(num_classes, 0);
    for (std::size_t step = 0; step < params.quota; ++step) {
        std::size_t best_class = num_classes;
        double best_gain = 0.0;
        for (std::size_t i = 0; i < num_classes; ++i) {
            if (result.selection.counts[i] >= instance.classes[i].size()) continue;
            ++result.op_count;
            const double gain =
                marginal_gain_at(instance, params, i, result.selection.counts[i]);
            if (best_class == num_classes || gain > best_gain) {
                best_class = i;
                best_gain = gain;
            }
        }
        ++result.selection.counts[best_class];
    }
    result.breakdown = evaluate(instance, params, result.selection);
    return result;
}

GreedyResult solve_greedy_merged(const Instance& instance, const PolicyParams& params) {
    check_quota(instance, params);
    const std::size_t num_classes = instance.num_classes();
    const std::size_t k = params.quota;

    GreedyResult result;
    result.selection.counts.assign(num_classes, 0);
    if (k == 0) {
        result.breakdown = evaluate(instance, params, result.selection);
        return result;
    }

    // Gains of each class's top min(n_i, k) candidates, computed once.
    // Uses the same formula as the naive variant so selections match bit
    // for bit.
    std::vector<std::vector<double>> gains(num_classes);
    for (std::size_t i = 0; i < num_classes; ++i) {
        const std::size_t depth = std::min(instance.classes[i].size(), k);
        gains[i].reserve(depth);
        for (std::size_t j = 0; j < depth; ++j) {
            ++result.op_count;
            gains[i].push_back(marginal_gain_at(instance, params, i, j));
        }
    }

    struct Head {
        double gain;
        std::size_t class_index;
    };
    // Max-heap on gain; equal gains pop the lowest class index first, the
    // naive tie-break. The kink in the discrepancy term means a class's
    // gain sequence is not pre-mergeable as a sorted run, so heads are
    // re-inserted with their next gain after every pop.
    struct HeadLess {
        bool operator()(const Head& a, const Head& b) const {
            if (a.gain != b.gain) return a.gain < b.gain;
            return a.class_index > b.class_index;
        }
    };
    std::priority_queue<Head, std::vector<Head>, HeadLess> heads;
    for (std::size_t i = 0; i < num_classes; ++i) {
        if (!gains[i].empty()) {
            heads.push({gains[i][0], i});
            ++result.op_count;
        }
    }

    for (std::size_t step = 0; step < k; ++step) {
        const Head top = heads.top();
        heads.pop();
        ++result.op_count;
        const std::size_t i = top.class_index;
        const std::size_t taken = ++result.selection.counts[i];
        if (taken < gains[i].size()) {
            heads.push({gains[i][taken], i});
            ++result.op_count;
        }
    }
    result.breakdown = evaluate(instance, params, result.selection);
    return result;
}

}  // namespace fairtopk
