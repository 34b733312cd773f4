#include "fairdiv/exact.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fairdiv/errors.hpp"

namespace fairdiv {

namespace {

// n^m, saturating at budget + 1 to keep the comparison overflow-free.
long long assignment_count(int n, int m, long long budget) {
    long long count = 1;
    for (int i = 0; i < m; ++i) {
        if (count > budget / n) return budget + 1;
        count *= n;
    }
    return count;
}

}  // namespace

ExactResult exact_optimum(const Instance& inst, const WelfareParam& param, long long budget) {
    validate_instance(inst);
    if (inst.m == 0) {
        ExactResult r;
        r.allocation.bundles.assign(static_cast<size_t>(inst.n), GoodSet{});
        r.welfare = p_mean(std::vector<double>(static_cast<size_t>(inst.n), 0.0), param);
        r.enumerated = 1;
        return r;
    }
    const long long total = assignment_count(inst.n, inst.m, budget);
    if (total > budget)
        throw BudgetError("exact enumeration needs n^m <= " + std::to_string(budget));

    std::vector<int> assign(static_cast<size_t>(inst.m), 0);  // good -> agent
    std::vector<std::vector<int>> bundles(static_cast<size_t>(inst.n));
    std::vector<double> values(static_cast<size_t>(inst.n));

    ExactResult best;
    best.welfare = -1.0;
    best.enumerated = total;

    for (long long code = 0; code < total; ++code) {
        // Odometer in lexicographic order over (assign[0], ..., assign[m-1]).
        long long rest = code;
        for (int g = inst.m - 1; g >= 0; --g) {
            assign[static_cast<size_t>(g)] = static_cast<int>(rest % inst.n);
            rest /= inst.n;
        }
        for (auto& b : bundles) b.clear();
        for (int g = 0; g < inst.m; ++g) bundles[static_cast<size_t>(assign[static_cast<size_t>(g)])].push_back(g);
        for (int i = 0; i < inst.n; ++i)
            values[static_cast<size_t>(i)] = inst.value(i, GoodSet(bundles[static_cast<size_t>(i)]));
        const double welfare = p_mean(values, param);
        if (welfare > best.welfare) {
            best.welfare = welfare;
            best.allocation.bundles.clear();
            for (const auto& b : bundles) best.allocation.bundles.emplace_back(b);
        }
    }
    return best;
}

double exact_ell(const Instance& inst, int agent, long long budget) {
    validate_instance(inst);
    if (agent < 0 || agent >= inst.n) throw std::invalid_argument("agent index out of range");
    const int m = inst.m;
    const int n = inst.n;
    const int removal = std::min(2 * n, m);
    const int keep = m - removal;
    if (keep == 0) return 0.0;

    double combos = 1.0;
    for (int i = 0; i < keep; ++i) combos = combos * (m - i) / (i + 1);
    if (combos > static_cast<double>(budget))
        throw BudgetError("exact ell enumeration exceeds budget");

    // All size-`keep` remainders; monotonicity makes smaller remainders redundant.
    std::vector<int> idx(static_cast<size_t>(keep));
    for (int i = 0; i < keep; ++i) idx[static_cast<size_t>(i)] = i;
    double lo = std::numeric_limits<double>::infinity();
    while (true) {
        lo = std::min(lo, inst.value(agent, GoodSet(idx)));
        int pos = keep - 1;
        while (pos >= 0 && idx[static_cast<size_t>(pos)] == m - keep + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<size_t>(pos)];
        for (int i = pos + 1; i < keep; ++i) idx[static_cast<size_t>(i)] = idx[static_cast<size_t>(i - 1)] + 1;
    }
    return lo / (2.0 * n);
}

double measure_ratio(const Instance& inst, const WelfareParam& param, const Allocation& alloc,
                     long long budget) {
    validate_allocation(alloc, inst.n, inst.m);
    const double opt = exact_optimum(inst, param, budget).welfare;
    const double achieved = p_mean(alloc.values(inst), param);
    if (achieved == 0.0) return opt == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    return opt / achieved;
}

}  // namespace fairdiv
