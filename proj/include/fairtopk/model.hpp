#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace fairtopk {

/// One applicant. `attributes` holds the coded value of each protected
/// attribute, in config order (e.g. {"1", "A", "a"}).
struct Candidate {
    std::string id;
    double score = 0.0;
    std::vector<std::string> attributes;
};

/// A group of candidates sharing one full combination of attribute codes.
/// Members are sorted by non-increasing score, ties by ascending id;
/// `utilities[j]` mirrors `members[j].score`.
struct IntersectionalClass {
    std::string label;
    std::vector<Candidate> members;
    std::vector<double> utilities;

    std::size_t size() const { return members.size(); }
};

/// The full candidate pool, partitioned into classes (sorted by label).
struct Instance {
    std::vector<IntersectionalClass> classes;
    std::size_t total_candidates = 0;

    std::size_t num_classes() const { return classes.size(); }
};

/// Target selection rate p, the equivalent quota k, and the trade-off
/// weight lambda converting discrepancy units into utility units.
struct PolicyParams {
    double selection_rate = 0.0;
    std::size_t quota = 0;
    double tradeoff = 0.0;

    static PolicyParams from_rate(double rate, const Instance& instance, double tradeoff);
    static PolicyParams from_quota(std::size_t quota, const Instance& instance, double tradeoff);
};

/// Canonical solution: counts[i] = number admitted from class i. The
/// admitted candidates of a class are always its top-`counts[i]` members.
struct Selection {
    std::vector<std::size_t> counts;
};

/// Scored decomposition of the objective J = B - lambda * D.
struct ObjectiveBreakdown {
    double total = 0.0;        // J
    double utility = 0.0;      // B
    double discrepancy = 0.0;  // D
    double lambda = 0.0;
    std::vector<double> per_class_utility;
    std::vector<double> per_class_discrepancy;
};

using ClassKeyFn = std::function<std::string(const Candidate&)>;

/// Default class key: concatenation of the attribute codes ("1"+"A"+"a").
std::string concat_attribute_codes(const Candidate& candidate);

/// Groups candidates into intersectional classes keyed by `class_key`.
/// Throws std::invalid_argument on duplicate ids, an empty pool, or
/// mismatched attribute arity.
Instance build_instance(std::vector<Candidate> candidates,
                        const ClassKeyFn& class_key = concat_attribute_codes);

struct FilterResult {
    Instance instance;
    std::vector<std::string> removed_labels;
};

/// Keeps only classes with size >= min_size. Throws if no class remains.
FilterResult filter_small_classes(const Instance& instance, std::size_t min_size);

/// Expands a count vector into the admitted candidate list (top members
/// per class, instance order).
std::vector<const Candidate*> admitted_candidates(const Instance& instance,
                                                  const Selection& selection);

}  // namespace fairtopk
