#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fairtopk/dp_solver.hpp"
#include "fairtopk/lp_solver.hpp"
#include "grid_oracle.hpp"
#include "support.hpp"

using namespace fairtopk;
using testsupport::relaxed_grid_search;

TEST_CASE("relaxation at lambda 0 fills the top-k exactly") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const Instance instance = testsupport::random_instance(rng, 3, 14, true);
        std::uniform_int_distribution<std::size_t> k_dist(0, instance.total_candidates);
        const PolicyParams params = PolicyParams::from_quota(k_dist(rng), instance, 0.0);
        const LpRelaxationResult relaxed = solve_lp_relaxation(instance, params);
        const DpResult dp = solve_dp(instance, params);
        CHECK(relaxed.objective == doctest::Approx(dp.breakdown.total).epsilon(1e-9));
    }
}

TEST_CASE("relaxation on the worked instance is already integral") {
    const Instance instance = testsupport::worked_instance();
    const PolicyParams params = PolicyParams::from_quota(2, instance, 2.0);
    const LpRelaxationResult relaxed = solve_lp_relaxation(instance, params);
    CHECK(relaxed.fractional.amounts[0] == doctest::Approx(1.0));
    CHECK(relaxed.fractional.amounts[1] == doctest::Approx(1.0));
    CHECK(relaxed.objective == doctest::Approx(14.0));
    CHECK(relaxed.objective == doctest::Approx(relaxed_grid_search(instance, params)).epsilon(1e-6));
}

TEST_CASE("relaxed value sandwiches the integer optimum") {
    std::mt19937_64 rng(2718);
    std::uniform_real_distribution<double> lambda_dist(0.0, 120.0);
    for (int trial = 0; trial < 200; ++trial) {
        const Instance instance = testsupport::random_instance(rng, 3, 14);
        std::uniform_int_distribution<std::size_t> k_dist(0, instance.total_candidates);
        const PolicyParams params =
            PolicyParams::from_quota(k_dist(rng), instance, lambda_dist(rng));
        const LpRelaxationResult relaxed = solve_lp_relaxation(instance, params);
        const RoundedResult rounded = round_lp(relaxed.fractional, instance, params);
        const DpResult dp = solve_dp(instance, params);
        CHECK(rounded.breakdown.total <= dp.breakdown.total + 1e-9);
        CHECK(dp.breakdown.total <= relaxed.objective + 1e-9);
        CHECK(rounded.gap >= 0.0);

        // Feasibility of the fractional mass.
        double mass = 0.0;
        for (std::size_t i = 0; i < instance.num_classes(); ++i) {
            CHECK(relaxed.fractional.amounts[i] >= -1e-9);
            CHECK(relaxed.fractional.amounts[i] <=
                  static_cast<double>(instance.classes[i].size()) + 1e-9);
            mass += relaxed.fractional.amounts[i];
        }
        CHECK(mass == doctest::Approx(static_cast<double>(params.quota)).epsilon(1e-9));
    }
}

TEST_CASE("at most one amount sits strictly inside a segment") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const Instance instance = testsupport::random_instance(rng, 3, 14);
        const PolicyParams params = PolicyParams::from_rate(0.25, instance, 33.0);
        const LpRelaxationResult relaxed = solve_lp_relaxation(instance, params);
        int mid_segment = 0;
        for (std::size_t i = 0; i < instance.num_classes(); ++i) {
            const double t = relaxed.fractional.amounts[i];
            const double kink =
                params.selection_rate * static_cast<double>(instance.classes[i].size());
            const bool integral = std::fabs(t - std::round(t)) < 1e-9;
            const bool at_kink = std::fabs(t - kink) < 1e-9;
            if (!integral && !at_kink) ++mid_segment;
        }
        CHECK(mid_segment <= 1);
    }
}

TEST_CASE("kkt stationarity holds at the relaxed optimum") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> lambda_dist(0.0, 80.0);
    for (int trial = 0; trial < 100; ++trial) {
        const Instance instance = testsupport::random_instance(rng, 3, 14);
        std::uniform_int_distribution<std::size_t> k_dist(0, instance.total_candidates);
        const PolicyParams params =
            PolicyParams::from_quota(k_dist(rng), instance, lambda_dist(rng));
        const LpRelaxationResult relaxed = solve_lp_relaxation(instance, params);
        CHECK(kkt_check(relaxed.fractional, instance, params, 1e-7));
    }
}

TEST_CASE("kkt check flags a perturbed point") {
    const Instance instance = testsupport::make_instance({{10, 1}, {9, 2}});
    const PolicyParams params = PolicyParams::from_quota(2, instance, 0.0);
    // Moving mass from the 10-score candidate to the 2-score one cannot be
    // stationary at lambda 0.
    FractionalSelection bad{{0.5, 1.5}};
    CHECK_FALSE(kkt_check(bad, instance, params, 1e-7));
}

TEST_CASE("relaxation matches the fine grid oracle") {
    std::mt19937_64 rng(1729);
    int checked = 0;
    while (checked < 40) {
        const Instance instance = testsupport::random_instance(rng, 3, 10);
        if (instance.total_candidates > 10) continue;
        for (double rate : {0.25, 0.5}) {
            for (double lambda : {0.0, 1.0, 5.0, 100.0}) {
                PolicyParams params = PolicyParams::from_rate(rate, instance, lambda);
                const LpRelaxationResult relaxed = solve_lp_relaxation(instance, params);
                const double grid_best = relaxed_grid_search(instance, params);
                CHECK(relaxed.objective == doctest::Approx(grid_best).epsilon(1e-9).scale(1.0));
                CHECK(std::fabs(relaxed.objective - grid_best) <= 1e-3);
            }
        }
        ++checked;
    }
}

TEST_CASE("rounding") {
    const Instance instance = testsupport::worked_instance();
    const PolicyParams params = PolicyParams::from_quota(2, instance, 2.0);

    SUBCASE("integral input is the identity") {
        const RoundedResult rounded = round_lp(FractionalSelection{{1.0, 1.0}}, instance, params);
        CHECK(rounded.selection.counts == std::vector<std::size_t>{1, 1});
        CHECK(rounded.gap == doctest::Approx(0.0));
    }
    SUBCASE("fractional tie goes to the larger marginal gain") {
        // fractions tie at 0.5; gains are 5 - 1 = 4 (class 0, second seat)
        // vs 4 + 1 = 5 (class 1, first seat).
        const RoundedResult rounded = round_lp(FractionalSelection{{1.5, 0.5}}, instance, params);
        CHECK(rounded.selection.counts == std::vector<std::size_t>{1, 1});
    }
    SUBCASE("near-integral noise snaps cleanly") {
        const RoundedResult rounded =
            round_lp(FractionalSelection{{1.0 + 1e-12, 1.0 - 1e-12}}, instance, params);
        CHECK(rounded.selection.counts == std::vector<std::size_t>{1, 1});
    }
}
