#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fairtopk/model.hpp"

namespace testsupport {

/// Builds an instance from explicit per-class utility lists; class labels
/// are "c0", "c1", ... in the given order.
inline fairtopk::Instance make_instance(const std::vector<std::vector<double>>& class_scores) {
    std::vector<fairtopk::Candidate> candidates;
    for (std::size_t i = 0; i < class_scores.size(); ++i) {
        for (std::size_t j = 0; j < class_scores[i].size(); ++j) {
            fairtopk::Candidate c;
            char idbuf[32];
            std::snprintf(idbuf, sizeof(idbuf), "c%zu-%03zu", i, j);
            c.id = idbuf;
            c.score = class_scores[i][j];
            c.attributes = {"c" + std::to_string(i)};
            candidates.push_back(std::move(c));
        }
    }
    return fairtopk::build_instance(std::move(candidates));
}

/// The 4-candidate worked instance: classes [10, 5] and [4, 3].
inline fairtopk::Instance worked_instance() {
    return make_instance({{10.0, 5.0}, {4.0, 3.0}});
}

/// Small random instance: |C| in [1, max_classes], n in [2, max_n]
/// candidates split into non-empty classes. Scores are uniform in
/// [0, 850], rounded to 0.01; with distinct_scores they are unique across
/// the whole pool so top-k selections are unambiguous.
inline fairtopk::Instance random_instance(std::mt19937_64& rng, std::size_t max_classes,
                                          std::size_t max_n, bool distinct_scores = false) {
    std::uniform_int_distribution<std::size_t> class_count_dist(1, max_classes);
    const std::size_t num_classes = class_count_dist(rng);
    std::uniform_int_distribution<std::size_t> n_dist(std::max<std::size_t>(num_classes, 2),
                                                      max_n);
    const std::size_t n = n_dist(rng);

    // Split n into num_classes positive parts.
    std::vector<std::size_t> sizes(num_classes, 1);
    std::uniform_int_distribution<std::size_t> pick(0, num_classes - 1);
    for (std::size_t extra = n - num_classes; extra > 0; --extra) ++sizes[pick(rng)];

    std::uniform_real_distribution<double> score_dist(0.0, 850.0);
    std::set<double> used;
    std::vector<std::vector<double>> class_scores(num_classes);
    for (std::size_t i = 0; i < num_classes; ++i) {
        for (std::size_t j = 0; j < sizes[i]; ++j) {
            double s = std::round(score_dist(rng) * 100.0) / 100.0;
            if (distinct_scores)
                while (!used.insert(s).second) s = std::round(score_dist(rng) * 100.0) / 100.0;
            class_scores[i].push_back(s);
        }
    }
    return make_instance(class_scores);
}

/// Count vector of the global top-k under (score desc, class asc, id asc).
inline std::vector<std::size_t> top_k_counts(const fairtopk::Instance& instance, std::size_t k) {
    struct Entry {
        double score;
        std::size_t class_index;
        std::string id;
    };
    std::vector<Entry> entries;
    for (std::size_t i = 0; i < instance.classes.size(); ++i)
        for (const auto& m : instance.classes[i].members)
            entries.push_back({m.score, i, m.id});
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.class_index != b.class_index) return a.class_index < b.class_index;
        return a.id < b.id;
    });
    std::vector<std::size_t> counts(instance.classes.size(), 0);
    for (std::size_t r = 0; r < k; ++r) ++counts[entries[r].class_index];
    return counts;
}

}  // namespace testsupport
