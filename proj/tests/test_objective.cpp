#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "fairtopk/objective.hpp"
#include "support.hpp"

using namespace fairtopk;

TEST_CASE("evaluate on the worked 4-candidate instance") {
    const Instance instance = testsupport::worked_instance();
    const PolicyParams params = PolicyParams::from_quota(2, instance, 1.0);
    const ObjectiveBreakdown breakdown = evaluate(instance, params, Selection{{2, 0}});
    CHECK(breakdown.utility == doctest::Approx(15.0));
    CHECK(breakdown.discrepancy == doctest::Approx(1.0));
    CHECK(breakdown.total == doctest::Approx(14.0));
    CHECK(breakdown.per_class_utility[0] == doctest::Approx(15.0));
    CHECK(breakdown.per_class_discrepancy[1] == doctest::Approx(0.5));
}

TEST_CASE("admitting exactly one full class hits the closed-form discrepancy") {
    // Class 0 holds exactly k members; two more classes stay empty.
    const Instance instance = testsupport::make_instance({{90, 80, 70}, {60, 50}, {40, 30, 20, 10}});
    const PolicyParams params = PolicyParams::from_quota(3, instance, 1.0);
    const ObjectiveBreakdown breakdown = evaluate(instance, params, Selection{{3, 0, 0}});
    const double p = params.selection_rate;
    CHECK(breakdown.discrepancy ==
          doctest::Approx((1.0 - p) + 2.0 * p).epsilon(1e-12));
}

TEST_CASE("empty selection scores the floor") {
    const Instance instance = testsupport::make_instance({{5, 4}, {3}, {2, 1}});
    PolicyParams params = PolicyParams::from_quota(0, instance, 7.0);
    params.selection_rate = 0.4;  // rate decoupled from the zero quota
    const ObjectiveBreakdown breakdown = evaluate(instance, params, Selection{{0, 0, 0}});
    CHECK(breakdown.utility == 0.0);
    CHECK(breakdown.discrepancy == doctest::Approx(3 * 0.4));
    CHECK(breakdown.total == doctest::Approx(-7.0 * 3 * 0.4));
}

TEST_CASE("evaluate rejects infeasible selections by class") {
    const Instance instance = testsupport::worked_instance();
    const PolicyParams params = PolicyParams::from_quota(2, instance, 0.0);
    CHECK_THROWS_WITH_AS(evaluate(instance, params, Selection{{3, 0}}),
                         doctest::Contains("c0"), std::invalid_argument);
    CHECK_THROWS_AS(evaluate(instance, params, Selection{{1}}), std::invalid_argument);
}

TEST_CASE("prefix table matches the per-class contribution formula") {
    const Instance instance = testsupport::worked_instance();

    SUBCASE("lambda 0 reduces to prefix sums") {
        const PolicyParams params = PolicyParams::from_quota(2, instance, 0.0);
        const PrefixContribution contribution = prefix_table(instance, params);
        CHECK(contribution.table[0][0] == 0.0);
        CHECK(contribution.table[0][1] == doctest::Approx(10.0));
        CHECK(contribution.table[0][2] == doctest::Approx(15.0));
    }
    SUBCASE("lambda 2 worked values") {
        // Direct evaluation, term by term: j=0 gives -2*0.5, j=1 gives
        // 10 - 0, j=2 gives 15 - 2*0.5.
        const PolicyParams params = PolicyParams::from_quota(2, instance, 2.0);
        const PrefixContribution contribution = prefix_table(instance, params);
        CHECK(contribution.table[0][0] == doctest::Approx(-1.0));
        CHECK(contribution.table[0][1] == doctest::Approx(10.0));
        CHECK(contribution.table[0][2] == doctest::Approx(14.0));
    }
    SUBCASE("full admission at rate 1 has no penalty") {
        const Instance one = testsupport::make_instance({{8, 6, 4}});
        const PolicyParams params = PolicyParams::from_rate(1.0, one, 5.0);
        const PrefixContribution contribution = prefix_table(one, params);
        CHECK(contribution.table[0][3] == doctest::Approx(18.0));
    }
}

TEST_CASE("marginal gain matches evaluate deltas and the closed form") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const Instance instance = testsupport::random_instance(rng, 3, 12);
        std::uniform_real_distribution<double> lambda_dist(0.0, 50.0);
        const PolicyParams params =
            PolicyParams::from_rate(0.5, instance, lambda_dist(rng));

        Selection selection{std::vector<std::size_t>(instance.num_classes(), 0)};
        for (std::size_t i = 0; i < instance.num_classes(); ++i) {
            std::uniform_int_distribution<std::size_t> count_dist(
                0, instance.classes[i].size() - 1);
            selection.counts[i] = count_dist(rng);
        }
        const double before = evaluate(instance, params, selection).total;
        for (std::size_t i = 0; i < instance.num_classes(); ++i) {
            const double gain = marginal_gain(instance, params, selection, i);
            Selection next = selection;
            ++next.counts[i];
            const double after = evaluate(instance, params, next).total;
            CHECK(gain == doctest::Approx(after - before).epsilon(1e-9));

            // Below the target rate the penalty term helps, at or above it
            // costs, by exactly lambda / n_i.
            const auto& cls = instance.classes[i];
            const double u = cls.utilities[selection.counts[i]];
            const double n = static_cast<double>(cls.size());
            const double rate_before = static_cast<double>(selection.counts[i]) / n;
            const double rate_after = static_cast<double>(selection.counts[i] + 1) / n;
            if (rate_after <= params.selection_rate + 1e-12)
                CHECK(gain == doctest::Approx(u + params.tradeoff / n));
            else if (rate_before >= params.selection_rate - 1e-12)
                CHECK(gain == doctest::Approx(u - params.tradeoff / n));
        }
    }
}

TEST_CASE("marginal gain rejects exhausted classes") {
    const Instance instance = testsupport::worked_instance();
    const PolicyParams params = PolicyParams::from_quota(2, instance, 1.0);
    CHECK_THROWS_AS(marginal_gain(instance, params, Selection{{2, 0}}, 0),
                    std::invalid_argument);
}

TEST_CASE("evaluate agrees with the prefix table on random selections") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 200; ++trial) {
        const Instance instance = testsupport::random_instance(rng, 4, 16);
        std::uniform_real_distribution<double> lambda_dist(0.0, 100.0);
        const PolicyParams params = PolicyParams::from_rate(0.25, instance, lambda_dist(rng));
        const PrefixContribution contribution = prefix_table(instance, params);

        Selection selection{std::vector<std::size_t>(instance.num_classes(), 0)};
        for (std::size_t i = 0; i < instance.num_classes(); ++i) {
            std::uniform_int_distribution<std::size_t> count_dist(0,
                                                                  instance.classes[i].size());
            selection.counts[i] = count_dist(rng);
        }
        double via_table = 0.0;
        for (std::size_t i = 0; i < instance.num_classes(); ++i)
            via_table += contribution.table[i][selection.counts[i]];
        const double via_evaluate = evaluate(instance, params, selection).total;
        CHECK(via_evaluate == doctest::Approx(via_table).epsilon(1e-9));
    }
}

TEST_CASE("marginal gains telescope from empty to any selection") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 50; ++trial) {
        const Instance instance = testsupport::random_instance(rng, 3, 10);
        const PolicyParams params = PolicyParams::from_rate(0.5, instance, 3.0);

        Selection target{std::vector<std::size_t>(instance.num_classes(), 0)};
        for (std::size_t i = 0; i < instance.num_classes(); ++i) {
            std::uniform_int_distribution<std::size_t> count_dist(0,
                                                                  instance.classes[i].size());
            target.counts[i] = count_dist(rng);
        }

        // Admit one candidate at a time in a shuffled class order.
        std::vector<std::size_t> sequence;
        for (std::size_t i = 0; i < instance.num_classes(); ++i)
            sequence.insert(sequence.end(), target.counts[i], i);
        std::shuffle(sequence.begin(), sequence.end(), rng);

        Selection current{std::vector<std::size_t>(instance.num_classes(), 0)};
        double gain_sum = 0.0;
        for (std::size_t cls : sequence) {
            gain_sum += marginal_gain(instance, params, current, cls);
            ++current.counts[cls];
        }
        const double empty = evaluate(instance, params,
                                      Selection{std::vector<std::size_t>(
                                          instance.num_classes(), 0)})
                                 .total;
        const double full = evaluate(instance, params, target).total;
        CHECK(gain_sum == doctest::Approx(full - empty).epsilon(1e-9));
    }
}

TEST_CASE("per-class discrepancy is piecewise linear with one kink") {
    // Convexity: penalty deltas never decrease as the count grows.
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const Instance instance = testsupport::random_instance(rng, 1, 14);
        std::uniform_real_distribution<double> rate_dist(0.05, 0.95);
        const double p = rate_dist(rng);
        const auto& cls = instance.classes[0];
        const double n = static_cast<double>(cls.size());
        double previous_delta = -2.0;
        int sign_changes = 0;
        for (std::size_t j = 1; j <= cls.size(); ++j) {
            const double delta = std::fabs(static_cast<double>(j) / n - p) -
                                 std::fabs(static_cast<double>(j - 1) / n - p);
            CHECK(delta >= previous_delta - 1e-12);
            if (previous_delta < -1.5) {
                previous_delta = delta;
                continue;
            }
            if ((previous_delta < 0) != (delta < 0)) ++sign_changes;
            previous_delta = delta;
        }
        CHECK(sign_changes <= 1);
    }
}
