#include "fairdiv/valuation.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace fairdiv {

using nlohmann::json;

void Valuation::check_indices(const GoodSet& s) const {
    const int m = good_count();
    for (int g : s.items())
        if (g < 0 || g >= m)
            throw std::invalid_argument("good index " + std::to_string(g) +
                                        " out of range [0," + std::to_string(m) + ")");
}

AdditiveValuation::AdditiveValuation(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_)
        if (!(v >= 0.0)) throw std::invalid_argument("additive values must be nonnegative");
}

double AdditiveValuation::value(const GoodSet& s) const {
    check_indices(s);
    double sum = 0.0;
    for (int g : s.items()) sum += values_[static_cast<size_t>(g)];
    return sum;
}

json AdditiveValuation::to_json() const {
    return json{{"kind", "additive"}, {"values", values_}};
}

XosValuation::XosValuation(std::vector<std::vector<double>> clauses)
    : clauses_(std::move(clauses)) {
    if (clauses_.empty()) throw std::invalid_argument("xos needs at least one clause");
    m_ = static_cast<int>(clauses_.front().size());
    for (const auto& c : clauses_) {
        if (static_cast<int>(c.size()) != m_)
            throw std::invalid_argument("xos clauses must all have length m");
        for (double v : c)
            if (!(v >= 0.0)) throw std::invalid_argument("xos clause values must be nonnegative");
    }
}

double XosValuation::value(const GoodSet& s) const {
    check_indices(s);
    double best = 0.0;
    for (const auto& c : clauses_) {
        double sum = 0.0;
        for (int g : s.items()) sum += c[static_cast<size_t>(g)];
        if (sum > best) best = sum;
    }
    return best;
}

json XosValuation::to_json() const {
    return json{{"kind", "xos"}, {"clauses", clauses_}};
}

BudgetAdditiveValuation::BudgetAdditiveValuation(std::vector<double> values, double cap)
    : values_(std::move(values)), cap_(cap) {
    if (!(cap_ >= 0.0)) throw std::invalid_argument("cap must be nonnegative");
    for (double v : values_)
        if (!(v >= 0.0)) throw std::invalid_argument("budget-additive values must be nonnegative");
}

double BudgetAdditiveValuation::value(const GoodSet& s) const {
    check_indices(s);
    double sum = 0.0;
    for (int g : s.items()) sum += values_[static_cast<size_t>(g)];
    return sum < cap_ ? sum : cap_;
}

json BudgetAdditiveValuation::to_json() const {
    return json{{"kind", "budget_additive"}, {"values", values_}, {"cap", cap_}};
}

CoverageValuation::CoverageValuation(int universe, std::vector<std::vector<int>> covers)
    : universe_(universe), covers_(std::move(covers)) {
    if (universe_ < 0) throw std::invalid_argument("universe must be nonnegative");
    words_ = (universe_ + 63) / 64;
    masks_.reserve(covers_.size());
    for (auto& cover : covers_) {
        std::vector<std::uint64_t> mask(static_cast<size_t>(words_), 0);
        for (int u : cover) {
            if (u < 0 || u >= universe_)
                throw std::invalid_argument("coverage element out of universe range");
            mask[static_cast<size_t>(u) / 64] |= std::uint64_t{1} << (u % 64);
        }
        masks_.push_back(std::move(mask));
    }
}

double CoverageValuation::value(const GoodSet& s) const {
    check_indices(s);
    if (words_ == 0) return 0.0;
    std::vector<std::uint64_t> acc(static_cast<size_t>(words_), 0);
    for (int g : s.items()) {
        const auto& mask = masks_[static_cast<size_t>(g)];
        for (int w = 0; w < words_; ++w) acc[static_cast<size_t>(w)] |= mask[static_cast<size_t>(w)];
    }
    long long covered = 0;
    for (std::uint64_t word : acc) covered += std::popcount(word);
    return static_cast<double>(covered);
}

json CoverageValuation::to_json() const {
    return json{{"kind", "coverage"}, {"universe", universe_}, {"goods", covers_}};
}

json CountingOracle::to_json() const { return inner_->to_json(); }

void validate_instance(const Instance& inst) {
    if (inst.n < 1) throw std::invalid_argument("instance needs at least one agent");
    if (inst.m < 0) throw std::invalid_argument("instance good count must be nonnegative");
    if (static_cast<int>(inst.agents.size()) != inst.n)
        throw std::invalid_argument("instance must carry exactly n oracles");
    for (const auto& a : inst.agents) {
        if (!a) throw std::invalid_argument("null oracle");
        if (a->good_count() != inst.m)
            throw std::invalid_argument("oracle ground set does not match m");
    }
}

Instance with_counting(const Instance& inst, std::vector<std::shared_ptr<CountingOracle>>& counters) {
    Instance wrapped;
    wrapped.n = inst.n;
    wrapped.m = inst.m;
    counters.clear();
    for (const auto& a : inst.agents) {
        auto c = std::make_shared<CountingOracle>(a);
        counters.push_back(c);
        wrapped.agents.push_back(c);
    }
    return wrapped;
}

namespace {

double axiom_slack(double lhs, double rhs, double rel_tol) {
    double scale = 1.0;
    if (std::abs(lhs) > scale) scale = std::abs(lhs);
    if (std::abs(rhs) > scale) scale = std::abs(rhs);
    return rel_tol * scale;
}

}  // namespace

AxiomReport check_axioms(const Valuation& v, int m, int samples, std::uint64_t seed,
                         double rel_tol) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    AxiomReport report;
    auto record = [&](const char* axiom, const GoodSet& a, const GoodSet& b, double lhs, double rhs) {
        report.violations.push_back({axiom, a, b, lhs, rhs});
    };

    const double v_empty = v.value(GoodSet{});
    ++report.checks;
    if (std::abs(v_empty) > rel_tol) record("normalized", GoodSet{}, GoodSet{}, v_empty, 0.0);

    if (m <= 12) {
        report.exhaustive = true;
        const std::uint64_t limit = std::uint64_t{1} << m;
        std::vector<double> table(limit);
        for (std::uint64_t mask = 0; mask < limit; ++mask)
            table[mask] = v.value(GoodSet::from_mask(mask));

        for (std::uint64_t mask = 0; mask < limit; ++mask) {
            ++report.checks;
            if (table[mask] < -rel_tol)
                record("nonnegative", GoodSet::from_mask(mask), GoodSet{}, table[mask], 0.0);
        }
        // Single-element extensions suffice for monotonicity.
        for (std::uint64_t mask = 0; mask < limit; ++mask)
            for (int g = 0; g < m; ++g) {
                if (mask & (std::uint64_t{1} << g)) continue;
                const std::uint64_t bigger = mask | (std::uint64_t{1} << g);
                ++report.checks;
                if (table[mask] > table[bigger] + axiom_slack(table[mask], table[bigger], rel_tol))
                    record("monotone", GoodSet::from_mask(mask), GoodSet::from_mask(bigger),
                           table[mask], table[bigger]);
            }
        for (std::uint64_t a = 0; a < limit; ++a)
            for (std::uint64_t b = 0; b < limit; ++b) {
                const double lhs = table[a | b];
                const double rhs = table[a] + table[b];
                ++report.checks;
                if (lhs > rhs + axiom_slack(lhs, rhs, rel_tol))
                    record("subadditive", GoodSet::from_mask(a), GoodSet::from_mask(b), lhs, rhs);
            }
        return report;
    }

    std::mt19937_64 rng(seed);
    auto random_set = [&]() {
        std::vector<int> items;
        for (int g = 0; g < m; ++g)
            if (rng() & 1u) items.push_back(g);
        return GoodSet(std::move(items));
    };
    for (int k = 0; k < samples; ++k) {
        GoodSet a = random_set();
        GoodSet b = random_set();
        GoodSet ab = a.unioned(b);
        const double va = v.value(a), vb = v.value(b), vab = v.value(ab);
        report.checks += 3;
        if (va < -rel_tol) record("nonnegative", a, GoodSet{}, va, 0.0);
        if (vb < -rel_tol) record("nonnegative", b, GoodSet{}, vb, 0.0);
        if (va > vab + axiom_slack(va, vab, rel_tol)) record("monotone", a, ab, va, vab);
        if (vab > va + vb + axiom_slack(vab, va + vb, rel_tol)) record("subadditive", a, b, vab, va + vb);
    }
    return report;
}

}  // namespace fairdiv
