#pragma once

#include <vector>

#include "fairtopk/model.hpp"
#include "fairtopk/objective.hpp"

namespace fairtopk {

/// Fractional admitted mass per class: amounts[i] = t_i in [0, n_i],
/// summing to k.
struct FractionalSelection {
    std::vector<double> amounts;
};

struct LpRelaxationResult {
    FractionalSelection fractional;
    double objective = 0.0;  // upper bound on the optimal integer J
};

/// Maximizes sum_i [P_i(t_i) - lambda * |t_i/n_i - p|] subject to
/// sum t_i = k, 0 <= t_i <= n_i, where P_i is the piecewise-linear
/// interpolation of class i's utility prefix sums. Each class's term is
/// concave, so the optimum is reached by repeatedly extending the class
/// with the steepest remaining linear segment.
LpRelaxationResult solve_lp_relaxation(const Instance& instance, const PolicyParams& params);

struct RoundedResult {
    Selection selection;
    ObjectiveBreakdown breakdown;
    double gap = 0.0;  // relaxed J minus rounded J, >= 0
};

/// Floors all amounts, then hands the leftover budget to the classes with
/// the largest fractional parts (ties: larger marginal gain first).
RoundedResult round_lp(const FractionalSelection& fractional, const Instance& instance,
                       const PolicyParams& params);

/// Value of the continuous objective at an arbitrary fractional point.
double continuous_objective(const FractionalSelection& fractional, const Instance& instance,
                            const PolicyParams& params);

/// Lagrangian stationarity audit: interior classes must share a common
/// multiplier within `tol`; classes at 0 must not prefer growth beyond it,
/// classes at n_i must not prefer shrinking below it. Writes the
/// multiplier to `multiplier_out` when non-null.
bool kkt_check(const FractionalSelection& fractional, const Instance& instance,
               const PolicyParams& params, double tol, double* multiplier_out = nullptr);

}  // namespace fairtopk
