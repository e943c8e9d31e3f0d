#include "fairtopk/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_set>

namespace fairtopk {

std::string concat_attribute_codes(const Candidate& candidate) {
    std::string key;
    for (const auto& code : candidate.attributes) key += code;
    return key;
}

Instance build_instance(std::vector<Candidate> candidates, const ClassKeyFn& class_key) {
    if (candidates.empty())
        throw std::invalid_argument("build_instance: empty candidate list");

    const std::size_t arity = candidates.front().attributes.size();
    std::unordered_set<std::string> seen_ids;
    seen_ids.reserve(candidates.size());
    for (const auto& c : candidates) {
        if (!seen_ids.insert(c.id).second)
            throw std::invalid_argument("build_instance: duplicate candidate id '" + c.id + "'");
        if (c.attributes.size() != arity)
            throw std::invalid_argument("build_instance: candidate '" + c.id +
                                        "' has mismatched attribute arity");
        if (!std::isfinite(c.score) || c.score < 0.0)
            throw std::invalid_argument("build_instance: candidate '" + c.id +
                                        "' has invalid score");
    }

    // std::map keeps classes ordered by label, so instance layout is
    // independent of input row order.
    std::map<std::string, std::vector<Candidate>> groups;
    for (auto& c : candidates) groups[class_key(c)].push_back(std::move(c));

    Instance instance;
    instance.classes.reserve(groups.size());
    for (auto& [label, members] : groups) {
        std::sort(members.begin(), members.end(), [](const Candidate& a, const Candidate& b) {
            if (a.score != b.score) return a.score > b.score;
            return a.id < b.id;
        });
        IntersectionalClass cls;
        cls.label = label;
        cls.utilities.reserve(members.size());
        for (const auto& m : members) cls.utilities.push_back(m.score);
        cls.members = std::move(members);
        instance.total_candidates += cls.members.size();
        instance.classes.push_back(std::move(cls));
    }
    return instance;
}

FilterResult filter_small_classes(const Instance& instance, std::size_t min_size) {
    if (min_size < 1)
        throw std::invalid_argument("filter_small_classes: min_size must be >= 1");

    FilterResult result;
    for (const auto& cls : instance.classes) {
        if (cls.size() >= min_size) {
            result.instance.total_candidates += cls.size();
            result.instance.classes.push_back(cls);
        } else {
            result.removed_labels.push_back(cls.label);
        }
    }
    if (result.instance.classes.empty())
        throw std::invalid_argument("filter_small_classes: no classes remain");
    return result;
}

PolicyParams PolicyParams::from_rate(double rate, const Instance& instance, double tradeoff) {
    if (!(rate >= 0.0 && rate <= 1.0))
        throw std::invalid_argument("PolicyParams: selection rate must lie in [0, 1]");
    if (!(tradeoff >= 0.0))
        throw std::invalid_argument("PolicyParams: tradeoff must be >= 0");
    PolicyParams params;
    params.selection_rate = rate;
    // Tiny epsilon absorbs binary representation error in rate * n
    // (e.g. 0.29 * 100) before flooring.
    params.quota = static_cast<std::size_t>(
        std::floor(rate * static_cast<double>(instance.total_candidates) + 1e-9));
    params.tradeoff = tradeoff;
    return params;
}

PolicyParams PolicyParams::from_quota(std::size_t quota, const Instance& instance, double tradeoff) {
    if (quota > instance.total_candidates)
        throw std::invalid_argument("PolicyParams: quota exceeds candidate count");
    if (!(tradeoff >= 0.0))
        throw std::invalid_argument("PolicyParams: tradeoff must be >= 0");
    PolicyParams params;
    params.quota = quota;
    params.selection_rate =
        static_cast<double>(quota) / static_cast<double>(instance.total_candidates);
    params.tradeoff = tradeoff;
    return params;
}

std::vector<const Candidate*> admitted_candidates(const Instance& instance,
                                                  const Selection& selection) {
    std::vector<const Candidate*> admitted;
    for (std::size_t i = 0; i < instance.classes.size(); ++i) {
        const auto& cls = instance.classes[i];
        const std::size_t count = selection.counts.at(i);
        for (std::size_t j = 0; j < count; ++j) admitted.push_back(&cls.members[j]);
    }
    return admitted;
}

}  // namespace fairtopk
