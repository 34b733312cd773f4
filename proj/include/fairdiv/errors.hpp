#pragma once

#include <stdexcept>
#include <string>

namespace fairdiv {

// Instance cannot be solved by the requested method (e.g. fewer goods than agents).
struct InfeasibleError : std::runtime_error {
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// Exhaustive enumeration would exceed the configured budget.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// The outer loop exceeded its analytic iteration cap; signals an oracle that
// violates the monotone/subadditive contract.
struct DivergenceError : std::runtime_error {
    explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fairdiv
