#include "fairdiv/generators.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace fairdiv {

using nlohmann::json;

namespace {

// Uniform double in [0, 1) from the top 53 bits; identical across platforms,
// unlike std::uniform_real_distribution.
double rand_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int rand_below(std::mt19937_64& rng, int bound) {
    return static_cast<int>(rng() % static_cast<std::uint64_t>(bound));
}

}  // namespace

OracleKind oracle_kind_from_string(const std::string& s) {
    if (s == "additive") return OracleKind::Additive;
    if (s == "xos") return OracleKind::Xos;
    if (s == "budget_additive") return OracleKind::BudgetAdditive;
    if (s == "coverage") return OracleKind::Coverage;
    throw std::invalid_argument("unknown oracle kind: " + s);
}

std::string to_string(OracleKind k) {
    switch (k) {
        case OracleKind::Additive: return "additive";
        case OracleKind::Xos: return "xos";
        case OracleKind::BudgetAdditive: return "budget_additive";
        case OracleKind::Coverage: return "coverage";
    }
    throw std::invalid_argument("bad oracle kind");
}

Instance gen_random(OracleKind kind, int n, int m, std::uint64_t seed, const RandomParams& params) {
    if (n < 1 || m < 0) throw std::invalid_argument("gen_random needs n >= 1, m >= 0");
    std::mt19937_64 rng(seed);
    Instance inst;
    inst.n = n;
    inst.m = m;
    auto draw_values = [&]() {
        std::vector<double> v(static_cast<size_t>(m));
        for (auto& x : v) x = 10.0 * rand_unit(rng);
        return v;
    };
    for (int i = 0; i < n; ++i) {
        switch (kind) {
            case OracleKind::Additive:
                inst.agents.push_back(std::make_shared<AdditiveValuation>(draw_values()));
                break;
            case OracleKind::Xos: {
                if (params.clauses < 1) throw std::invalid_argument("xos needs clauses >= 1");
                std::vector<std::vector<double>> clauses;
                for (int c = 0; c < params.clauses; ++c) clauses.push_back(draw_values());
                inst.agents.push_back(std::make_shared<XosValuation>(std::move(clauses)));
                break;
            }
            case OracleKind::BudgetAdditive: {
                if (!(params.cap_fraction > 0.0))
                    throw std::invalid_argument("budget-additive needs cap_fraction > 0");
                auto v = draw_values();
                const double total = std::accumulate(v.begin(), v.end(), 0.0);
                inst.agents.push_back(
                    std::make_shared<BudgetAdditiveValuation>(std::move(v), params.cap_fraction * total));
                break;
            }
            case OracleKind::Coverage: {
                if (!(params.density > 0.0 && params.density <= 1.0))
                    throw std::invalid_argument("coverage needs density in (0, 1]");
                int universe = params.universe > 0 ? params.universe : std::max(1, 2 * m);
                std::vector<std::vector<int>> covers(static_cast<size_t>(m));
                for (auto& cover : covers)
                    for (int u = 0; u < universe; ++u)
                        if (rand_unit(rng) < params.density) cover.push_back(u);
                inst.agents.push_back(std::make_shared<CoverageValuation>(universe, std::move(covers)));
                break;
            }
        }
    }
    return inst;
}

std::vector<GoodSet> xos_hard_partition(int n, std::uint64_t seed) {
    const int m = n * n;
    std::vector<int> perm(static_cast<size_t>(m));
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937_64 rng(seed);
    for (int i = m - 1; i > 0; --i) std::swap(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(rand_below(rng, i + 1))]);
    std::vector<GoodSet> blocks;
    blocks.reserve(static_cast<size_t>(n));
    for (int b = 0; b < n; ++b)
        blocks.emplace_back(std::vector<int>(perm.begin() + static_cast<long>(b) * n,
                                             perm.begin() + static_cast<long>(b + 1) * n));
    return blocks;
}

XosHardValuation::XosHardValuation(int n, double delta, std::uint64_t seed, bool identical,
                                   int agent_index)
    : n_(n), delta_(delta), seed_(seed), identical_(identical), agent_index_(agent_index) {
    if (n_ < 2) throw std::invalid_argument("xos_hard needs n >= 2");
    if (!(delta_ > 0.0 && delta_ < 0.25)) throw std::invalid_argument("xos_hard needs 0 < delta < 1/4");
    if (agent_index_ < 0 || agent_index_ >= n_) throw std::invalid_argument("xos_hard agent index out of range");
    size_cap_ = static_cast<int>(std::floor((1.0 + delta_) * std::pow(n_, 4.0 * delta_)));
    linear_coef_ = (1.0 + delta_) / std::pow(n_, 1.0 - 2.0 * delta_);
    if (!identical_) {
        block_ = xos_hard_partition(n_, seed_)[static_cast<size_t>(agent_index_)];
        const int words = (n_ * n_ + 63) / 64;
        block_mask_.assign(static_cast<size_t>(words), 0);
        for (int g : block_.items())
            block_mask_[static_cast<size_t>(g) / 64] |= std::uint64_t{1} << (g % 64);
    }
}

double XosHardValuation::common_value(int bundle_size) const {
    const double capped = std::min(bundle_size, size_cap_);
    return std::max(capped, linear_coef_ * bundle_size);
}

double XosHardValuation::value(const GoodSet& s) const {
    check_indices(s);
    double best = common_value(s.size());
    if (!identical_) {
        int hits = 0;
        for (int g : s.items())
            if (block_mask_[static_cast<size_t>(g) / 64] & (std::uint64_t{1} << (g % 64))) ++hits;
        best = std::max(best, static_cast<double>(hits));
    }
    return best;
}

json XosHardValuation::to_json() const {
    return json{{"kind", "xos_hard"}, {"n", n_}, {"delta", delta_}, {"seed", seed_},
                {"identical", identical_}};
}

Instance gen_xos_hard(int n, double delta, std::uint64_t seed, bool identical) {
    Instance inst;
    inst.n = n;
    inst.m = n * n;
    for (int i = 0; i < n; ++i)
        inst.agents.push_back(std::make_shared<XosHardValuation>(n, delta, seed, identical, i));
    return inst;
}

Instance gen_partition_reduction(const std::vector<long long>& s) {
    const int k = static_cast<int>(s.size());
    if (k < 2) throw std::invalid_argument("partition reduction needs at least two integers");
    for (long long x : s)
        if (x <= 0) throw std::invalid_argument("partition reduction needs positive integers");
    std::vector<double> values(s.begin(), s.end());
    Instance inst;
    inst.n = k;
    inst.m = k;
    inst.agents.push_back(std::make_shared<AdditiveValuation>(values));
    inst.agents.push_back(std::make_shared<AdditiveValuation>(values));
    for (int i = 2; i < k; ++i)
        inst.agents.push_back(std::make_shared<AdditiveValuation>(std::vector<double>(static_cast<size_t>(k), 0.0)));
    return inst;
}

double partition_target(const std::vector<long long>& s, double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("partition target needs p in (0, 1)");
    if (s.empty()) throw std::invalid_argument("partition target needs a nonempty multiset");
    const double m = static_cast<double>(s.size());
    const double z = static_cast<double>(std::accumulate(s.begin(), s.end(), 0LL));
    return std::pow(2.0 / m, 1.0 / p) * z / 2.0;
}

}  // namespace fairdiv
