#include "fairtopk/lp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <vector>

namespace fairtopk {

namespace {

// g_i(t) = P_i(t) - lambda * |t/n_i - p| for one class.
class ClassCurve {
public:
    ClassCurve(const IntersectionalClass& cls, const PolicyParams& params)
        : cls_(cls), lambda_(params.tradeoff), rate_(params.selection_rate) {
        prefix_.resize(cls.size() + 1, 0.0);
        for (std::size_t j = 1; j <= cls.size(); ++j)
            prefix_[j] = prefix_[j - 1] + cls.utilities[j - 1];

        // Breakpoints: the integers 0..n_i plus the kink at p * n_i.
        const double kink = rate_ * static_cast<double>(cls.size());
        breakpoints_.reserve(cls.size() + 2);
        for (std::size_t j = 0; j <= cls.size(); ++j) {
            const double b = static_cast<double>(j);
            if (kink > b - 1.0 + 1e-12 && kink < b - 1e-12 && j >= 1)
                breakpoints_.push_back(kink);
            breakpoints_.push_back(b);
        }
    }

    double value(double t) const {
        const double n = static_cast<double>(cls_.size());
        const double whole = std::floor(t);
        std::size_t j = static_cast<std::size_t>(whole);
        if (j >= cls_.size()) j = cls_.size();  // t == n_i
        double interpolated = prefix_[j];
        const double frac = t - static_cast<double>(j);
        if (frac > 0.0 && j < cls_.size()) interpolated += frac * cls_.utilities[j];
        return interpolated - lambda_ * std::fabs(t / n - rate_);
    }

    const std::vector<double>& breakpoints() const { return breakpoints_; }

    // Slope of the linear piece between breakpoints [lo, hi].
    double segment_slope(double lo, double hi) const {
        return (value(hi) - value(lo)) / (hi - lo);
    }

    // One-sided derivatives, for the KKT audit.
    double right_slope(double t) const {
        const double n = static_cast<double>(cls_.size());
        if (t >= n - 1e-12) return -std::numeric_limits<double>::infinity();
        const double u = cls_.utilities[static_cast<std::size_t>(std::floor(t + 1e-12))];
        const double sign = (t / n - rate_ >= -1e-12) ? 1.0 : -1.0;
        return u - lambda_ * sign / n;
    }
    double left_slope(double t) const {
        const double n = static_cast<double>(cls_.size());
        if (t <= 1e-12) return std::numeric_limits<double>::infinity();
        const double u = cls_.utilities[static_cast<std::size_t>(std::ceil(t - 1e-12)) - 1];
        const double sign = (t / n - rate_ > 1e-12) ? 1.0 : -1.0;
        return u - lambda_ * sign / n;
    }

private:
    const IntersectionalClass& cls_;
    double lambda_;
    double rate_;
    std::vector<double> prefix_;
    std::vector<double> breakpoints_;
};

}  // namespace

LpRelaxationResult solve_lp_relaxation(const Instance& instance, const PolicyParams& params) {
    if (params.quota > instance.total_candidates)
        throw std::invalid_argument("solve_lp_relaxation: quota exceeds candidate count");
    const std::size_t num_classes = instance.num_classes();

    std::vector<ClassCurve> curves;
    curves.reserve(num_classes);
    for (const auto& cls : instance.classes) curves.emplace_back(cls, params);

    LpRelaxationResult result;
    result.fractional.amounts.assign(num_classes, 0.0);

    // Greedy over segment slopes through a heap of per-class next
    // segments. Consuming segments in class order keeps each t_i a prefix
    // of its curve even if floating point perturbs two equal slopes.
    struct Segment {
        double slope;
        std::size_t class_index;
        std::size_t next_breakpoint;  // index into the class's breakpoints
    };
    struct SegmentLess {
        bool operator()(const Segment& a, const Segment& b) const {
            if (a.slope != b.slope) return a.slope < b.slope;
            return a.class_index > b.class_index;
        }
    };
    std::priority_queue<Segment, std::vector<Segment>, SegmentLess> heap;
    for (std::size_t i = 0; i < num_classes; ++i) {
        const auto& bp = curves[i].breakpoints();
        if (bp.size() > 1)
            heap.push({curves[i].segment_slope(bp[0], bp[1]), i, 1});
    }

    double budget = static_cast<double>(params.quota);
    while (budget > 1e-12 && !heap.empty()) {
        const Segment seg = heap.top();
        heap.pop();
        const auto& bp = curves[seg.class_index].breakpoints();
        const double lo = bp[seg.next_breakpoint - 1];
        const double hi = bp[seg.next_breakpoint];
        const double length = hi - lo;
        const double take = std::min(length, budget);
        result.fractional.amounts[seg.class_index] = lo + take;
        budget -= take;
        if (take >= length - 1e-15) {
            result.fractional.amounts[seg.class_index] = hi;  // land exactly on the breakpoint
            if (seg.next_breakpoint + 1 < bp.size())
                heap.push({curves[seg.class_index].segment_slope(hi, bp[seg.next_breakpoint + 1]),
                           seg.class_index, seg.next_breakpoint + 1});
        }
    }

    result.objective = continuous_objective(result.fractional, instance, params);
    return result;
}

double continuous_objective(const FractionalSelection& fractional, const Instance& instance,
                            const PolicyParams& params) {
    if (fractional.amounts.size() != instance.num_classes())
        throw std::invalid_argument("continuous_objective: amounts size mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < instance.num_classes(); ++i) {
        ClassCurve curve(instance.classes[i], params);
        total += curve.value(fractional.amounts[i]);
    }
    return total;
}

RoundedResult round_lp(const FractionalSelection& fractional, const Instance& instance,
                       const PolicyParams& params) {
    const std::size_t num_classes = instance.num_classes();
    if (fractional.amounts.size() != num_classes)
        throw std::invalid_argument("round_lp: amounts size mismatch");

    RoundedResult result;
    result.selection.counts.assign(num_classes, 0);

    std::size_t floor_sum = 0;
    std::vector<double> fraction(num_classes, 0.0);
    for (std::size_t i = 0; i < num_classes; ++i) {
        double amount = fractional.amounts[i];
        const double snapped = std::round(amount);
        if (std::fabs(amount - snapped) <= 1e-9) amount = snapped;
        const double whole = std::floor(amount);
        result.selection.counts[i] = static_cast<std::size_t>(whole);
        fraction[i] = amount - whole;
        floor_sum += result.selection.counts[i];
    }

    if (floor_sum > params.quota)
        throw std::invalid_argument("round_lp: amounts sum beyond the quota");
    std::size_t leftover = params.quota - floor_sum;

    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < num_classes; ++i)
        if (fraction[i] > 1e-9 && result.selection.counts[i] < instance.classes[i].size())
            order.push_back(i);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (fraction[a] != fraction[b]) return fraction[a] > fraction[b];
        const double gain_a = marginal_gain_at(instance, params, a, result.selection.counts[a]);
        const double gain_b = marginal_gain_at(instance, params, b, result.selection.counts[b]);
        if (gain_a != gain_b) return gain_a > gain_b;
        return a < b;
    });
    if (leftover > order.size())
        throw std::invalid_argument("round_lp: amounts do not sum to the quota");
    for (std::size_t r = 0; r < leftover; ++r) ++result.selection.counts[order[r]];

    result.breakdown = evaluate(instance, params, result.selection);
    const double relaxed = continuous_objective(fractional, instance, params);
    result.gap = relaxed - result.breakdown.total;
    if (result.gap < 0.0 && result.gap > -1e-9) result.gap = 0.0;
    return result;
}

bool kkt_check(const FractionalSelection& fractional, const Instance& instance,
               const PolicyParams& params, double tol, double* multiplier_out) {
    const std::size_t num_classes = instance.num_classes();
    if (fractional.amounts.size() != num_classes)
        throw std::invalid_argument("kkt_check: amounts size mismatch");

    // Feasible multipliers form the interval
    //   [max over growth-capable classes of right slope,
    //    min over shrink-capable classes of left slope];
    // stationarity holds iff it is non-empty (within tol).
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < num_classes; ++i) {
        ClassCurve curve(instance.classes[i], params);
        const double t = fractional.amounts[i];
        const double n = static_cast<double>(instance.classes[i].size());
        if (t < -1e-9 || t > n + 1e-9) return false;
        if (t < n - 1e-9) lower = std::max(lower, curve.right_slope(t));
        if (t > 1e-9) upper = std::min(upper, curve.left_slope(t));
    }
    if (multiplier_out) {
        if (std::isfinite(lower))
            *multiplier_out = std::isfinite(upper) ? 0.5 * (lower + upper) : lower;
        else
            *multiplier_out = std::isfinite(upper) ? upper : 0.0;
    }
    return lower <= upper + tol;
}

}  // namespace fairtopk
