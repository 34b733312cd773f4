#pragma once

#include "fairdiv/allocator.hpp"
#include "fairdiv/valuation.hpp"
#include "fairdiv/welfare.hpp"

namespace fairdiv {

inline constexpr long long kDefaultEnumBudget = 20'000'000;

struct ExactResult {
    Allocation allocation;
    double welfare = 0.0;
    long long enumerated = 0;  // always n^m
};

// Brute force over all n^m assignments of goods to agents; ties go to the
// first maximizer in lexicographic assignment order. Throws BudgetError when
// n^m exceeds the budget.
ExactResult exact_optimum(const Instance& inst, const WelfareParam& param,
                          long long budget = kDefaultEnumBudget);

// Exact proportional floor: min over removals S, |S| <= 2n, of
// v_i([m] \ S) / (2n). Monotonicity lets the scan visit only removals of size
// exactly min(2n, m); the result is identical to the full scan.
double exact_ell(const Instance& inst, int agent, long long budget = kDefaultEnumBudget);

// M_p(optimum) / M_p(allocation); +inf when only the allocation's welfare is
// zero, 1 when both are zero.
double measure_ratio(const Instance& inst, const WelfareParam& param, const Allocation& alloc,
                     long long budget = kDefaultEnumBudget);

}  // namespace fairdiv
