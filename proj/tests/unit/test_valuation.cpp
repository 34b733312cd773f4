#include <doctest.h>

#include <stdexcept>

#include <json.hpp>

#include "fairdiv/valuation.hpp"

using namespace fairdiv;

namespace {

// Deliberately superadditive: v(S) = |S|^2. Violates subadditivity as soon as
// two singletons meet.
class SquaredCardinality final : public Valuation {
public:
    explicit SquaredCardinality(int m) : m_(m) {}
    double value(const GoodSet& s) const override {
        check_indices(s);
        return static_cast<double>(s.size()) * s.size();
    }
    int good_count() const override { return m_; }
    std::string kind() const override { return "squared_cardinality"; }
    nlohmann::json to_json() const override { return nullptr; }

private:
    int m_;
};

}  // namespace

TEST_CASE("additive oracle sums member values") {
    AdditiveValuation v({5, 4, 3});
    CHECK(v.value(GoodSet({0, 2})) == doctest::Approx(8.0));
    CHECK(v.value(GoodSet{}) == 0.0);
    CHECK_THROWS_AS(v.value(GoodSet({3})), std::invalid_argument);
    CHECK_THROWS_AS(v.value(GoodSet({-1})), std::invalid_argument);
}

TEST_CASE("xos oracle takes the best clause") {
    XosValuation v({{3, 0}, {0, 2}});
    CHECK(v.value(GoodSet({0, 1})) == 3.0);
    CHECK(v.value(GoodSet({1})) == 2.0);
    CHECK(v.value(GoodSet{}) == 0.0);
}

TEST_CASE("budget additive caps the sum") {
    BudgetAdditiveValuation v({2, 2}, 3);
    CHECK(v.value(GoodSet({0})) == 2.0);
    CHECK(v.value(GoodSet({0, 1})) == 3.0);
}

TEST_CASE("coverage counts the union") {
    CoverageValuation v(4, {{0, 1}, {1, 2}, {}});
    CHECK(v.value(GoodSet({0, 1})) == 3.0);
    CHECK(v.value(GoodSet({2})) == 0.0);
    CHECK(v.value(GoodSet{}) == 0.0);
    CHECK_THROWS_AS(CoverageValuation(2, {{5}}), std::invalid_argument);
}

TEST_CASE("xos value equals a clause-max recomputation on every subset") {
    std::vector<std::vector<double>> clauses{
        {1, 0, 2, 0.5, 3, 0, 1, 4, 0, 2},
        {0, 2, 0, 1.5, 0, 3, 2, 0, 1, 0},
        {2, 2, 2, 0, 0, 0, 0, 0, 2, 2},
    };
    XosValuation v(clauses);
    const int m = 10;
    for (std::uint64_t mask = 0; mask < (1u << m); ++mask) {
        GoodSet s = GoodSet::from_mask(mask);
        double expected = 0.0;
        for (const auto& c : clauses) {
            double sum = 0.0;
            for (int g : s.items()) sum += c[static_cast<size_t>(g)];
            expected = std::max(expected, sum);
        }
        REQUIRE(v.value(s) == expected);
    }
}

TEST_CASE("counting oracle is value-transparent and counts each query once") {
    auto inner = std::make_shared<AdditiveValuation>(std::vector<double>{1, 2, 3});
    CountingOracle counting(inner);
    CHECK(counting.count() == 0);
    GoodSet s({0, 2});
    CHECK(counting.value(s) == inner->value(s));
    CHECK(counting.count() == 1);
    counting.value(GoodSet{});
    counting.value(s);
    CHECK(counting.count() == 3);
    counting.reset();
    CHECK(counting.count() == 0);
}

TEST_CASE("axiom check passes the shipped oracle kinds") {
    AdditiveValuation additive({1, 0, 2.5, 4});
    CHECK(check_axioms(additive, 4, 50, 7).ok());

    BudgetAdditiveValuation budget({2, 2}, 3);
    CHECK(check_axioms(budget, 2, 50, 7).ok());

    XosValuation xos({{3, 0, 1}, {0, 2, 2}});
    CHECK(check_axioms(xos, 3, 50, 7).ok());

    CoverageValuation coverage(6, {{0, 1}, {1, 2}, {3}, {}});
    CHECK(check_axioms(coverage, 4, 50, 7).ok());
}

TEST_CASE("axiom check samples larger ground sets") {
    std::vector<double> values(20, 1.0);
    AdditiveValuation v(values);
    AxiomReport report = check_axioms(v, 20, 300, 11);
    CHECK(report.ok());
    CHECK_FALSE(report.exhaustive);

    SquaredCardinality bad(20);
    CHECK_FALSE(check_axioms(bad, 20, 300, 11).ok());
}

TEST_CASE("axiom check flags a superadditive oracle with a witness") {
    SquaredCardinality bad(3);
    AxiomReport report = check_axioms(bad, 3, 10, 1);
    REQUIRE_FALSE(report.ok());
    bool found = false;
    for (const auto& violation : report.violations) {
        if (violation.axiom != "subadditive") continue;
        if (violation.a == GoodSet({0}) && violation.b == GoodSet({1})) {
            CHECK(violation.lhs == 4.0);
            CHECK(violation.rhs == 2.0);
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("instance validation") {
    Instance inst;
    inst.n = 2;
    inst.m = 2;
    inst.agents = {std::make_shared<AdditiveValuation>(std::vector<double>{1, 2})};
    CHECK_THROWS_AS(validate_instance(inst), std::invalid_argument);
    inst.agents.push_back(std::make_shared<AdditiveValuation>(std::vector<double>{1, 2, 3}));
    CHECK_THROWS_AS(validate_instance(inst), std::invalid_argument);
    inst.agents[1] = std::make_shared<AdditiveValuation>(std::vector<double>{3, 4});
    CHECK_NOTHROW(validate_instance(inst));
}
