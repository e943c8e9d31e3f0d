#include "fairtopk/oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>
#include <string>

namespace fairtopk {

std::uint64_t composition_bound(const Instance& instance, const PolicyParams& params) {
    std::uint64_t product = 1;
    for (const auto& cls : instance.classes) {
        const std::uint64_t options =
            static_cast<std::uint64_t>(std::min(cls.size(), params.quota)) + 1;
        if (product > std::numeric_limits<std::uint64_t>::max() / options)
            return std::numeric_limits<std::uint64_t>::max();
        product *= options;
    }
    return product;
}

namespace {

constexpr std::uint64_t kMaxCompositions = 10'000'000;

// capacity_after[i] = sum of class sizes strictly after class i, so the
// enumeration only visits compositions that can still reach the quota.
void enumerate_counts(const Instance& instance, const PolicyParams& params,
                      const std::vector<std::size_t>& capacity_after,
                      std::vector<std::size_t>& counts, std::size_t class_index,
                      std::size_t remaining, CountOracleResult& best, bool& found) {
    if (class_index == instance.num_classes()) {
        const double value = evaluate(instance, params, Selection{counts}).total;
        // Strict improvement keeps the first (lexicographically smallest)
        // composition on exact ties.
        if (!found || value > best.objective) {
            found = true;
            best.objective = value;
            best.selection.counts = counts;
        }
        return;
    }
    const std::size_t class_size = instance.classes[class_index].size();
    const std::size_t hi = std::min(class_size, remaining);
    const std::size_t after = capacity_after[class_index];
    const std::size_t lo = remaining > after ? remaining - after : 0;
    for (std::size_t take = lo; take <= hi; ++take) {
        counts[class_index] = take;
        enumerate_counts(instance, params, capacity_after, counts, class_index + 1,
                         remaining - take, best, found);
    }
    counts[class_index] = 0;
}

}  // namespace

CountOracleResult oracle_counts(const Instance& instance, const PolicyParams& params) {
    if (params.quota > instance.total_candidates)
        throw std::invalid_argument("oracle_counts: quota exceeds candidate count");
    const std::uint64_t bound = composition_bound(instance, params);
    if (bound > kMaxCompositions)
        throw std::invalid_argument("oracle_counts: instance too large (" +
                                    std::to_string(bound) + " compositions, limit " +
                                    std::to_string(kMaxCompositions) + ")");

    std::vector<std::size_t> capacity_after(instance.num_classes(), 0);
    for (std::size_t i = instance.num_classes(); i-- > 1;)
        capacity_after[i - 1] = capacity_after[i] + instance.classes[i].size();

    CountOracleResult best;
    bool found = false;
    std::vector<std::size_t> counts(instance.num_classes(), 0);
    enumerate_counts(instance, params, capacity_after, counts, 0, params.quota, best, found);
    if (!found) throw std::runtime_error("oracle_counts: no feasible composition");
    return best;
}

SubsetOracleResult oracle_subsets(const Instance& instance, const PolicyParams& params) {
    const std::size_t n = instance.total_candidates;
    if (n > 20)
        throw std::invalid_argument("oracle_subsets: instance has " + std::to_string(n) +
                                    " candidates, limit 20");
    if (params.quota > n)
        throw std::invalid_argument("oracle_subsets: quota exceeds candidate count");
    const std::size_t k = params.quota;

    // Flatten candidates class-major; bit b of a mask selects flat[b].
    std::vector<double> flat_utility;
    std::vector<std::size_t> flat_class;
    flat_utility.reserve(n);
    flat_class.reserve(n);
    for (std::size_t i = 0; i < instance.num_classes(); ++i)
        for (double u : instance.classes[i].utilities) {
            flat_utility.push_back(u);
            flat_class.push_back(i);
        }

    const auto score_mask = [&](std::uint32_t mask) {
        double utility = 0.0;
        std::vector<std::size_t> admitted(instance.num_classes(), 0);
        std::uint32_t bits = mask;
        while (bits) {
            const unsigned b = static_cast<unsigned>(std::countr_zero(bits));
            bits &= bits - 1;
            utility += flat_utility[b];
            ++admitted[flat_class[b]];
        }
        double discrepancy = 0.0;
        for (std::size_t i = 0; i < instance.num_classes(); ++i)
            discrepancy += std::abs(static_cast<double>(admitted[i]) /
                                        static_cast<double>(instance.classes[i].size()) -
                                    params.selection_rate);
        return utility - params.tradeoff * discrepancy;
    };

    SubsetOracleResult best;
    if (k == 0) {
        best.selected_mask = 0;
        best.objective = score_mask(0);
        return best;
    }

    // Gosper's hack walks all n-bit masks with popcount k in increasing
    // numeric order.
    const std::uint32_t limit = (n == 32) ? 0xffffffffu : ((1u << n) - 1u);
    std::uint32_t mask = (1u << k) - 1u;
    bool found = false;
    while (mask <= limit) {
        const double value = score_mask(mask);
        if (!found || value > best.objective) {
            found = true;
            best.objective = value;
            best.selected_mask = mask;
        }
        // next mask with the same popcount
        const std::uint32_t c = mask & (0u - mask);
        const std::uint32_t r = mask + c;
        if (r == 0) break;  // overflow past the top mask
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    return best;
}

}  // namespace fairtopk
