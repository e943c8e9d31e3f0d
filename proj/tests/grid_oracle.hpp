#pragma once

// Test-only brute-force oracle for the continuous relaxation: evaluates
// the interpolated objective on a fixed 1e-3 grid, independently of the
// solver's segment decomposition.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "fairtopk/model.hpp"

namespace testsupport {

inline double relaxed_grid_value(const fairtopk::Instance& instance,
                                 const fairtopk::PolicyParams& params, std::size_t class_index,
                                 double t) {
    const auto& cls = instance.classes[class_index];
    double remaining = t;
    double utility = 0.0;
    for (std::size_t j = 0; j < cls.size() && remaining > 0.0; ++j) {
        const double portion = std::min(1.0, remaining);
        utility += portion * cls.utilities[j];
        remaining -= portion;
    }
    const double rate = t / static_cast<double>(cls.size());
    return utility - params.tradeoff * std::fabs(rate - params.selection_rate);
}

/// Maximum of the relaxation over the 1e-3 lattice; requires |C| <= 3.
inline double relaxed_grid_search(const fairtopk::Instance& instance,
                                  const fairtopk::PolicyParams& params) {
    constexpr double kStep = 1e-3;
    const std::size_t num_classes = instance.num_classes();
    const long k_idx = std::lround(static_cast<double>(params.quota) / kStep);

    std::vector<std::vector<double>> values(num_classes);
    for (std::size_t i = 0; i < num_classes; ++i) {
        const long n_idx = std::lround(static_cast<double>(instance.classes[i].size()) / kStep);
        values[i].resize(static_cast<std::size_t>(n_idx) + 1);
        for (long idx = 0; idx <= n_idx; ++idx)
            values[i][static_cast<std::size_t>(idx)] =
                relaxed_grid_value(instance, params, i, static_cast<double>(idx) * kStep);
    }

    double best = -std::numeric_limits<double>::infinity();
    const auto limit = [&](std::size_t i) { return static_cast<long>(values[i].size()) - 1; };
    if (num_classes == 1) {
        if (k_idx <= limit(0)) best = values[0][static_cast<std::size_t>(k_idx)];
    } else if (num_classes == 2) {
        for (long a = std::max(0l, k_idx - limit(1)); a <= std::min(limit(0), k_idx); ++a)
            best = std::max(best, values[0][static_cast<std::size_t>(a)] +
                                      values[1][static_cast<std::size_t>(k_idx - a)]);
    } else if (num_classes == 3) {
        for (long a = std::max(0l, k_idx - limit(1) - limit(2)); a <= std::min(limit(0), k_idx);
             ++a) {
            const long rest = k_idx - a;
            const double va = values[0][static_cast<std::size_t>(a)];
            for (long b = std::max(0l, rest - limit(2)); b <= std::min(limit(1), rest); ++b)
                best = std::max(best, va + values[1][static_cast<std::size_t>(b)] +
                                          values[2][static_cast<std::size_t>(rest - b)]);
        }
    }
    return best;
}

}  // namespace testsupport
