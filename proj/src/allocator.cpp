#include "fairdiv/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fairdiv/errors.hpp"
#include "fairdiv/matching.hpp"

namespace fairdiv {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::vector<double> Allocation::values(const Instance& inst) const {
    std::vector<double> out;
    out.reserve(bundles.size());
    for (int i = 0; i < static_cast<int>(bundles.size()); ++i)
        out.push_back(inst.value(i, bundles[static_cast<size_t>(i)]));
    return out;
}

void validate_allocation(const Allocation& alloc, int n, int m) {
    if (static_cast<int>(alloc.bundles.size()) != n)
        throw std::invalid_argument("allocation must have one bundle per agent");
    std::vector<char> seen(static_cast<size_t>(m), 0);
    for (const auto& b : alloc.bundles)
        for (int g : b.items()) {
            if (g < 0 || g >= m) throw std::invalid_argument("allocation good index out of range");
            if (seen[static_cast<size_t>(g)]) throw std::invalid_argument("allocation bundles overlap");
            seen[static_cast<size_t>(g)] = 1;
        }
}

std::vector<GoodSet> moving_knife(const GoodSet& goods, const std::vector<int>& agents,
                                  const OracleList& oracles, int n,
                                  const std::vector<int>* order) {
    std::vector<GoodSet> bundles(oracles.size());
    if (agents.empty() || goods.empty()) return bundles;
    if (n < static_cast<int>(agents.size()))
        throw std::invalid_argument("moving knife needs n >= |A|");

    std::vector<int> sequence = order ? *order : goods.items();
    if (order) {
        if (GoodSet(sequence) != goods || sequence.size() != goods.items().size())
            throw std::invalid_argument("moving knife order must permute the good set");
    }

    std::vector<int> remaining = agents;
    std::sort(remaining.begin(), remaining.end());
    for (int a : remaining)
        if (a < 0 || a >= static_cast<int>(oracles.size()))
            throw std::invalid_argument("moving knife agent id out of range");

    std::vector<double> threshold(oracles.size(), 0.0);
    for (int a : remaining) threshold[static_cast<size_t>(a)] = oracles[static_cast<size_t>(a)]->value(goods) / (2.0 * n);

    GoodSet window;
    int last_assigned = -1;
    size_t pos = 0;
    while (pos < sequence.size() && !remaining.empty()) {
        window.insert(sequence[pos]);
        ++pos;
        for (size_t k = 0; k < remaining.size(); ++k) {
            const int a = remaining[k];
            if (oracles[static_cast<size_t>(a)]->value(window) >= threshold[static_cast<size_t>(a)]) {
                bundles[static_cast<size_t>(a)] = window;
                window = GoodSet{};
                remaining.erase(remaining.begin() + static_cast<long>(k));
                last_assigned = a;
                break;
            }
        }
    }
    // Goods past the knife when every agent is served join the last bundle cut.
    if (pos < sequence.size()) {
        const int target = last_assigned >= 0 ? last_assigned : *std::min_element(agents.begin(), agents.end());
        for (; pos < sequence.size(); ++pos) bundles[static_cast<size_t>(target)].insert(sequence[pos]);
    }
    return bundles;
}

SingletonPhaseResult singleton_phase(const GoodSet& goods, const std::vector<int>& agents,
                                     const OracleList& oracles, int n) {
    SingletonPhaseResult res;
    res.remaining_goods = goods;
    res.remaining_agents = agents;
    std::sort(res.remaining_agents.begin(), res.remaining_agents.end());

    bool found = true;
    while (found) {
        found = false;
        for (size_t k = 0; k < res.remaining_agents.size() && !found; ++k) {
            const int a = res.remaining_agents[k];
            const double threshold =
                oracles[static_cast<size_t>(a)]->value(res.remaining_goods) / (2.0 * n);
            for (int g : res.remaining_goods.items()) {
                if (oracles[static_cast<size_t>(a)]->value(GoodSet({g})) >= threshold) {
                    res.assigned.emplace_back(a, g);
                    res.remaining_goods.erase(g);
                    res.remaining_agents.erase(res.remaining_agents.begin() + static_cast<long>(k));
                    found = true;
                    break;
                }
            }
        }
    }
    return res;
}

GammaState gamma_init(const Instance& inst) {
    GammaState state;
    state.t = 0;
    state.gamma.assign(static_cast<size_t>(inst.n), 0.0);
    state.sat.assign(static_cast<size_t>(inst.n), false);
    const GoodSet everything = GoodSet::all(inst.m);
    for (int i = 0; i < inst.n; ++i) {
        std::vector<int> by_value(static_cast<size_t>(inst.m));
        for (int g = 0; g < inst.m; ++g) by_value[static_cast<size_t>(g)] = g;
        std::vector<double> singles(static_cast<size_t>(inst.m));
        for (int g = 0; g < inst.m; ++g) singles[static_cast<size_t>(g)] = inst.value(i, GoodSet({g}));
        std::stable_sort(by_value.begin(), by_value.end(), [&](int a, int b) {
            return singles[static_cast<size_t>(a)] > singles[static_cast<size_t>(b)];
        });
        const int drop = std::min(2 * inst.n, inst.m);
        GoodSet rest = everything;
        for (int k = 0; k < drop; ++k) rest.erase(by_value[static_cast<size_t>(k)]);
        state.gamma[static_cast<size_t>(i)] =
            inst.value(i, rest) == 0.0 ? 0.0 : inst.value(i, everything);
    }
    return state;
}

long long alg_iteration_bound(const Instance& inst) {
    validate_instance(inst);
    double total = 0.0;
    for (int i = 0; i < inst.n; ++i) {
        double hi = 0.0, lo_pos = kInf;
        for (int g = 0; g < inst.m; ++g) {
            const double v = inst.value(i, GoodSet({g}));
            hi = std::max(hi, v);
            if (v > 0.0) lo_pos = std::min(lo_pos, v);
        }
        if (hi == 0.0) continue;  // agent never repeats in the unsatisfied set
        total += inst.m * std::log(2.0 * inst.n * inst.m * (hi / lo_pos));
    }
    return static_cast<long long>(std::ceil(total)) + inst.n + 1;
}

namespace {

enum class Variant { MaxWeight, MinWeight, Bottleneck };

struct EdgePlan {
    Variant variant = Variant::MaxWeight;
    double p = 0.0;  // effective exponent
};

EdgePlan plan_for(double p_eff) {
    if (std::isinf(p_eff) && p_eff < 0.0) return {Variant::Bottleneck, p_eff};
    if (p_eff == 0.0) return {Variant::MaxWeight, 0.0};
    if (p_eff > 0.0) return {Variant::MaxWeight, p_eff};
    return {Variant::MinWeight, p_eff};
}

double edge_weight(const EdgePlan& plan, double base, double eta) {
    switch (plan.variant) {
        case Variant::Bottleneck:
            return base;
        case Variant::MaxWeight:
            if (plan.p == 0.0) {
                if (base > 0.0) return eta * std::log(base);
                return eta > 0.0 ? -kSentinel : 0.0;
            }
            return eta * std::pow(base, plan.p);
        case Variant::MinWeight: {
            if (base <= 0.0) return eta > 0.0 ? kSentinel : 0.0;
            const double w = eta * std::pow(base, plan.p);
            return w < kSentinel ? w : kSentinel;  // underflowing bases act like zero edges
        }
    }
    return 0.0;
}

MatchingResult run_matching(const EdgePlan& plan, const WeightMatrix& w) {
    switch (plan.variant) {
        case Variant::Bottleneck: return bottleneck_matching(w);
        case Variant::MaxWeight: return max_weight_matching(w);
        case Variant::MinWeight: return min_weight_matching(w);
    }
    throw std::logic_error("unreachable");
}

}  // namespace

SolveResult alg_solve(const Instance& raw, const WelfareParam& param, double iteration_cap_factor) {
    validate_instance(raw);
    if (raw.m < raw.n) throw InfeasibleError("alg needs at least as many goods as agents");
    if (param.p > 1.0) throw std::invalid_argument("alg needs p <= 1");
    if (!param.weights.empty() && static_cast<int>(param.weights.size()) != raw.n)
        throw std::invalid_argument("weight count must equal n");
    if (!(iteration_cap_factor > 0.0)) throw std::invalid_argument("cap factor must be positive");

    std::vector<std::shared_ptr<CountingOracle>> counters;
    const Instance inst = with_counting(raw, counters);
    const int n = inst.n, m = inst.m;
    auto eta = [&](int i) { return param.weights.empty() ? 1.0 : param.weights[static_cast<size_t>(i)]; };

    const EdgePlan plan = plan_for(effective_p(param.p, n));
    const long long cap = static_cast<long long>(
        std::ceil(static_cast<double>(alg_iteration_bound(inst)) * iteration_cap_factor));

    GammaState state = gamma_init(inst);
    const double decay = 1.0 - 1.0 / static_cast<double>(m);
    const GoodSet everything = GoodSet::all(m);
    std::vector<int> all_agents(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) all_agents[static_cast<size_t>(i)] = i;

    SolveResult result;
    RunTrace& trace = result.trace;

    while (true) {
        if (static_cast<long long>(trace.iterations.size()) >= cap)
            throw DivergenceError("iteration cap exceeded; an oracle likely violates monotone subadditivity");

        IterationRecord rec;
        rec.gamma = state.gamma;

        WeightMatrix w(n, m);
        for (int i = 0; i < n; ++i)
            for (int g = 0; g < m; ++g)
                w.at(i, g) = edge_weight(plan, inst.value(i, GoodSet({g})) + state.gamma[static_cast<size_t>(i)], eta(i));
        MatchingResult matching = run_matching(plan, w);
        rec.matched = matching.assignment;
        rec.matching_used_sentinel = matching.used_sentinel;

        GoodSet pool = everything;
        for (int g : matching.assignment) pool.erase(g);

        SingletonPhaseResult singles = singleton_phase(pool, all_agents, inst.agents, n);
        std::vector<GoodSet> phase_bundles =
            moving_knife(singles.remaining_goods, singles.remaining_agents, inst.agents, n);
        rec.singleton_good.assign(static_cast<size_t>(n), -1);
        for (auto [agent, good] : singles.assigned) {
            phase_bundles[static_cast<size_t>(agent)] = GoodSet({good});
            rec.singleton_good[static_cast<size_t>(agent)] = good;
        }
        rec.phase_bundles = phase_bundles;

        bool all_sat = true;
        rec.sat.assign(static_cast<size_t>(n), false);
        for (int i = 0; i < n; ++i) {
            const bool ok = inst.value(i, phase_bundles[static_cast<size_t>(i)]) >= state.gamma[static_cast<size_t>(i)];
            rec.sat[static_cast<size_t>(i)] = ok;
            all_sat = all_sat && ok;
        }
        state.sat = rec.sat;
        trace.iterations.push_back(std::move(rec));
        ++state.t;

        if (all_sat) {
            const IterationRecord& last = trace.iterations.back();
            result.allocation.bundles = last.phase_bundles;
            for (int i = 0; i < n; ++i)
                result.allocation.bundles[static_cast<size_t>(i)].insert(last.matched[static_cast<size_t>(i)]);

            // Goods no phase touched (possible only when the singleton phase
            // consumed every agent) join the final singleton holder's bundle.
            GoodSet assigned;
            for (const auto& b : result.allocation.bundles) assigned = assigned.unioned(b);
            GoodSet leftovers = everything.minus(assigned);
            if (!leftovers.empty()) {
                const int target = singles.assigned.empty() ? 0 : singles.assigned.back().first;
                result.allocation.bundles[static_cast<size_t>(target)] =
                    result.allocation.bundles[static_cast<size_t>(target)].unioned(leftovers);
            }
            break;
        }

        for (int i = 0; i < n; ++i)
            if (!state.sat[static_cast<size_t>(i)]) state.gamma[static_cast<size_t>(i)] *= decay;
    }

    for (const auto& c : counters) trace.value_queries += c->count();
    return result;
}

Allocation matching_baseline(const Instance& inst, const WelfareParam& param) {
    validate_instance(inst);
    if (inst.m < inst.n) throw InfeasibleError("matching baseline needs m >= n");
    if (param.p > 0.0) throw std::invalid_argument("matching baseline needs p <= 0");

    const EdgePlan plan = plan_for(effective_p(param.p, inst.n));
    WeightMatrix w(inst.n, inst.m);
    for (int i = 0; i < inst.n; ++i)
        for (int g = 0; g < inst.m; ++g)
            w.at(i, g) = edge_weight(plan, inst.value(i, GoodSet({g})), 1.0);
    MatchingResult matching = run_matching(plan, w);

    Allocation alloc;
    alloc.bundles.assign(static_cast<size_t>(inst.n), GoodSet{});
    GoodSet leftovers = GoodSet::all(inst.m);
    for (int i = 0; i < inst.n; ++i) {
        alloc.bundles[static_cast<size_t>(i)].insert(matching.assignment[static_cast<size_t>(i)]);
        leftovers.erase(matching.assignment[static_cast<size_t>(i)]);
    }
    alloc.bundles[0] = alloc.bundles[0].unioned(leftovers);
    return alloc;
}

Allocation combined_solve(const Instance& inst, const WelfareParam& param) {
    validate_instance(inst);
    if (param.p != 0.0) throw std::invalid_argument("combined solve is defined for p = 0");
    if (inst.m < inst.n) throw InfeasibleError("combined solve needs m >= n");
    if (static_cast<long long>(inst.m) >= static_cast<long long>(inst.n) * inst.n)
        return alg_solve(inst, param).allocation;
    return matching_baseline(inst, param);
}

}  // namespace fairdiv
