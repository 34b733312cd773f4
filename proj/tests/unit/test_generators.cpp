#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numeric>

#include "fairdiv/exact.hpp"
#include "fairdiv/generators.hpp"
#include "fairdiv/instance_io.hpp"

using namespace fairdiv;

namespace {

// The clause-list reading of the hard family's common function: best
// |S intersect T| over all S up to the size cap, against the scaled
// cardinality clause.
double literal_common_value(int n, double delta, const GoodSet& t) {
    const double cap = (1.0 + delta) * std::pow(n, 4.0 * delta);
    double best = (1.0 + delta) / std::pow(n, 1.0 - 2.0 * delta) * t.size();
    const int m = n * n;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        GoodSet s = GoodSet::from_mask(mask);
        if (static_cast<double>(s.size()) > cap) continue;
        best = std::max(best, static_cast<double>(s.intersect(t).size()));
    }
    return best;
}

}  // namespace

TEST_CASE("gen_random is deterministic per seed") {
    for (OracleKind kind : {OracleKind::Additive, OracleKind::Xos, OracleKind::BudgetAdditive,
                            OracleKind::Coverage}) {
        Instance a = gen_random(kind, 2, 4, 7);
        Instance b = gen_random(kind, 2, 4, 7);
        Instance c = gen_random(kind, 2, 4, 8);
        CHECK(instance_to_string(a) == instance_to_string(b));
        CHECK(instance_to_string(a) != instance_to_string(c));
    }
}

TEST_CASE("gen_random output passes the axiom check") {
    for (OracleKind kind : {OracleKind::Additive, OracleKind::Xos, OracleKind::BudgetAdditive,
                            OracleKind::Coverage}) {
        Instance inst = gen_random(kind, 2, 6, 3);
        for (const auto& agent : inst.agents)
            CHECK(check_axioms(*agent, inst.m, 100, 5).ok());
    }
}

TEST_CASE("gen_random rejects bad parameters") {
    CHECK_THROWS_AS(gen_random(OracleKind::Additive, 0, 3, 1), std::invalid_argument);
    RandomParams params;
    params.clauses = 0;
    CHECK_THROWS_AS(gen_random(OracleKind::Xos, 2, 3, 1, params), std::invalid_argument);
    CHECK_THROWS_AS(oracle_kind_from_string("bogus"), std::invalid_argument);
}

TEST_CASE("xos_hard partition is an equal split of the square") {
    for (int n : {2, 3, 5}) {
        auto blocks = xos_hard_partition(n, 13);
        REQUIRE(static_cast<int>(blocks.size()) == n);
        GoodSet all;
        for (const auto& b : blocks) {
            CHECK(b.size() == n);
            CHECK(all.intersect(b).empty());
            all = all.unioned(b);
        }
        CHECK(all == GoodSet::all(n * n));
    }
}

TEST_CASE("xos_hard closed form equals the clause-list definition exhaustively") {
    for (int n : {2, 3}) {
        const double delta = 0.1;
        Instance identical = gen_xos_hard(n, delta, 21, true);
        const auto& oracle = *identical.agents[0];
        const int m = n * n;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
            GoodSet t = GoodSet::from_mask(mask);
            REQUIRE(oracle.value(t) == literal_common_value(n, delta, t));
        }
    }
}

TEST_CASE("xos_hard basics") {
    Instance inst = gen_xos_hard(3, 0.1, 4, false);
    CHECK(inst.n == 3);
    CHECK(inst.m == 9);
    auto blocks = xos_hard_partition(3, 4);
    for (int i = 0; i < 3; ++i)
        CHECK(inst.value(i, blocks[static_cast<size_t>(i)]) == 3.0);
    CHECK(inst.value(0, GoodSet{}) == 0.0);
    CHECK(inst.value(0, GoodSet({5})) == 1.0);

    for (const auto& agent : inst.agents)
        CHECK(check_axioms(*agent, inst.m, 400, 17).ok());

    CHECK_THROWS_AS(gen_xos_hard(1, 0.1, 0, true), std::invalid_argument);
    CHECK_THROWS_AS(gen_xos_hard(3, 0.3, 0, true), std::invalid_argument);
    CHECK_THROWS_AS(gen_xos_hard(3, 0.0, 0, true), std::invalid_argument);
}

TEST_CASE("partition reduction structure") {
    Instance inst = gen_partition_reduction({3, 1, 4});
    CHECK(inst.n == 3);
    CHECK(inst.m == 3);
    CHECK(inst.value(0, GoodSet({0, 2})) == 7.0);
    CHECK(inst.value(1, GoodSet({0, 2})) == 7.0);
    CHECK(inst.value(2, GoodSet::all(3)) == 0.0);

    CHECK_THROWS_AS(gen_partition_reduction({}), std::invalid_argument);
    CHECK_THROWS_AS(gen_partition_reduction({5}), std::invalid_argument);
    CHECK_THROWS_AS(gen_partition_reduction({1, 0}), std::invalid_argument);
}

TEST_CASE("partition target attained exactly when a balanced split exists") {
    // (1,1): split {0} / {1} reaches the target at p = 1/2.
    Instance even = gen_partition_reduction({1, 1});
    ExactResult opt = exact_optimum(even, {0.5, {}});
    CHECK(opt.welfare == doctest::Approx(partition_target({1, 1}, 0.5)).epsilon(1e-12));
    CHECK(partition_target({1, 1}, 0.5) == doctest::Approx(1.0));

    // (1,1,1): odd total, optimum stays strictly below the target.
    Instance odd = gen_partition_reduction({1, 1, 1});
    ExactResult opt_odd = exact_optimum(odd, {0.5, {}});
    CHECK(opt_odd.welfare < partition_target({1, 1, 1}, 0.5) - 1e-9);
}
