#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "fairdiv/good_set.hpp"
#include "fairdiv/valuation.hpp"
#include "fairdiv/welfare.hpp"

namespace fairdiv {

struct Allocation {
    std::vector<GoodSet> bundles;  // one per agent, pairwise disjoint

    std::vector<double> values(const Instance& inst) const;
};

// Throws std::invalid_argument unless bundles are disjoint subsets of [0,m).
void validate_allocation(const Allocation& alloc, int n, int m);

// Per-agent estimates with SAT/UNSAT bookkeeping. sat[i] reflects the most
// recent iteration's outcome; gamma never increases, and an UNSAT agent's
// entry shrinks by exactly (1 - 1/m) per iteration.
struct GammaState {
    int t = 0;
    std::vector<double> gamma;
    std::vector<bool> sat;
};

struct IterationRecord {
    std::vector<double> gamma;        // estimates entering the iteration
    std::vector<int> matched;         // agent -> good from this iteration's matching
    bool matching_used_sentinel = false;
    std::vector<GoodSet> phase_bundles;  // B_i^t built by the two phases
    std::vector<int> singleton_good;     // good taken in the singleton phase, -1 otherwise
    std::vector<bool> sat;               // SAT membership decided this iteration
};

struct RunTrace {
    std::vector<IterationRecord> iterations;
    long long value_queries = 0;
};

struct SolveResult {
    Allocation allocation;
    RunTrace trace;
};

using OracleList = std::vector<std::shared_ptr<const Valuation>>;

// Scans the goods (ascending index unless an explicit order is given),
// accumulating a window until some remaining agent values it at least
// v_i(goods)/(2n); that agent takes the window. Once every agent is served,
// unscanned goods are appended to the last bundle handed out. Agents that are
// never satisfied receive an empty bundle. Returns one bundle per instance
// agent; only ids listed in `agents` can be nonempty.
std::vector<GoodSet> moving_knife(const GoodSet& goods, const std::vector<int>& agents,
                                  const OracleList& oracles, int n,
                                  const std::vector<int>* order = nullptr);

struct SingletonPhaseResult {
    std::vector<std::pair<int, int>> assigned;  // (agent, good) in assignment order
    GoodSet remaining_goods;
    std::vector<int> remaining_agents;
};

// Repeatedly hands a single good g to an agent a with v_a(g) >= v_a(G)/(2n),
// where G is the current remaining set; the (agent, good) pair is the
// lexicographically smallest qualifying one. Stops when no pair qualifies.
SingletonPhaseResult singleton_phase(const GoodSet& goods, const std::vector<int>& agents,
                                     const OracleList& oracles, int n);

// Initial estimates: gamma_i = 0 when dropping agent i's top-2n singleton
// goods leaves zero value (which, under subadditivity, happens exactly when
// some <=2n-good removal wipes the agent out), else gamma_i = v_i([m]).
GammaState gamma_init(const Instance& inst);

// Explicit count behind the outer-loop termination argument:
//   ceil(sum_i m*ln(2nm * max_g v_i(g) / min positive v_i(g))) + n + 1,
// with all-zero agents contributing nothing.
long long alg_iteration_bound(const Instance& inst);

// The main solver: iterated matching (variant chosen by the effective
// exponent) followed by the singleton and moving-knife phases, with
// multiplicative gamma decrements until every agent is satisfied. Guarantees
// p-mean welfare at least (1-1/m)/(8n) of the optimum for monotone
// subadditive oracles. Throws InfeasibleError when m < n and DivergenceError
// when the iteration cap (bound * iteration_cap_factor) is exceeded.
SolveResult alg_solve(const Instance& inst, const WelfareParam& param,
                      double iteration_cap_factor = 2.0);

// Single-matching baseline for p <= 0: minimum-weight matching on v_i(g)^p
// (maximum log-weight at p = 0), leftovers to agent 0. Achieves an
// (m-n+1)-approximation.
Allocation matching_baseline(const Instance& inst, const WelfareParam& param);

// For Nash welfare: runs alg_solve when m >= n^2, matching_baseline
// otherwise, giving an O(sqrt(m)) guarantee overall.
Allocation combined_solve(const Instance& inst, const WelfareParam& param);

}  // namespace fairdiv
