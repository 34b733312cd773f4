#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "fairdiv/good_set.hpp"

namespace fairdiv {

// Value oracle over a ground set of m goods. All shipped oracles are
// nonnegative, normalized (v(emptyset)=0), monotone and subadditive; the
// interface itself only promises a deterministic value per query.
class Valuation {
public:
    virtual ~Valuation() = default;
    virtual double value(const GoodSet& s) const = 0;
    virtual int good_count() const = 0;
    virtual std::string kind() const = 0;
    virtual nlohmann::json to_json() const = 0;

    double value_of(int good) const { return value(GoodSet({good})); }

protected:
    // Throws std::invalid_argument on an out-of-range index.
    void check_indices(const GoodSet& s) const;
};

class AdditiveValuation final : public Valuation {
public:
    explicit AdditiveValuation(std::vector<double> values);
    double value(const GoodSet& s) const override;
    int good_count() const override { return static_cast<int>(values_.size()); }
    std::string kind() const override { return "additive"; }
    nlohmann::json to_json() const override;
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> values_;
};

// Max over a list of additive clauses.
class XosValuation final : public Valuation {
public:
    explicit XosValuation(std::vector<std::vector<double>> clauses);
    double value(const GoodSet& s) const override;
    int good_count() const override { return m_; }
    std::string kind() const override { return "xos"; }
    nlohmann::json to_json() const override;
    const std::vector<std::vector<double>>& clauses() const { return clauses_; }

private:
    std::vector<std::vector<double>> clauses_;
    int m_ = 0;
};

class BudgetAdditiveValuation final : public Valuation {
public:
    BudgetAdditiveValuation(std::vector<double> values, double cap);
    double value(const GoodSet& s) const override;
    int good_count() const override { return static_cast<int>(values_.size()); }
    std::string kind() const override { return "budget_additive"; }
    nlohmann::json to_json() const override;
    double cap() const { return cap_; }

private:
    std::vector<double> values_;
    double cap_ = 0.0;
};

// Each good covers a subset of a dense universe [0, universe); the value of a
// bundle is the size of the union of its goods' subsets.
class CoverageValuation final : public Valuation {
public:
    CoverageValuation(int universe, std::vector<std::vector<int>> covers);
    double value(const GoodSet& s) const override;
    int good_count() const override { return static_cast<int>(covers_.size()); }
    std::string kind() const override { return "coverage"; }
    nlohmann::json to_json() const override;
    int universe() const { return universe_; }
    const std::vector<std::vector<int>>& covers() const { return covers_; }

private:
    int universe_ = 0;
    std::vector<std::vector<int>> covers_;
    std::vector<std::vector<std::uint64_t>> masks_;  // per good, universe bitset
    int words_ = 0;
};

// Transparent wrapper that counts value queries. The counter is atomic so
// concurrent evaluations of a shared oracle stay exact.
class CountingOracle final : public Valuation {
public:
    explicit CountingOracle(std::shared_ptr<const Valuation> inner)
        : inner_(std::move(inner)) {}

    double value(const GoodSet& s) const override {
        count_.fetch_add(1, std::memory_order_relaxed);
        return inner_->value(s);
    }
    int good_count() const override { return inner_->good_count(); }
    std::string kind() const override { return inner_->kind(); }
    nlohmann::json to_json() const override;

    long long count() const { return count_.load(std::memory_order_relaxed); }
    void reset() { count_.store(0, std::memory_order_relaxed); }
    const std::shared_ptr<const Valuation>& inner() const { return inner_; }

private:
    std::shared_ptr<const Valuation> inner_;
    mutable std::atomic<long long> count_{0};
};

// A fair division instance: n agents, m goods, one oracle per agent, all
// defined on the same ground set.
struct Instance {
    int n = 0;
    int m = 0;
    std::vector<std::shared_ptr<const Valuation>> agents;

    double value(int agent, const GoodSet& s) const { return agents[static_cast<size_t>(agent)]->value(s); }
};

// Throws std::invalid_argument if the instance is structurally broken.
void validate_instance(const Instance& inst);

// Wraps every agent oracle in a CountingOracle; `counters` receives the wrappers.
Instance with_counting(const Instance& inst, std::vector<std::shared_ptr<CountingOracle>>& counters);

struct AxiomViolation {
    std::string axiom;  // "nonnegative" | "normalized" | "monotone" | "subadditive"
    GoodSet a, b;
    double lhs = 0.0, rhs = 0.0;
};

struct AxiomReport {
    std::vector<AxiomViolation> violations;
    long long checks = 0;
    bool exhaustive = false;
    bool ok() const { return violations.empty(); }
};

// Exhaustive over all subset pairs for m <= 12, otherwise `samples` random
// pairs. rel_tol absorbs benign summation-order noise.
AxiomReport check_axioms(const Valuation& v, int m, int samples, std::uint64_t seed,
                         double rel_tol = 1e-9);

}  // namespace fairdiv
