#pragma once

#include <cstdint>
#include <vector>

#include "fairdiv/valuation.hpp"

namespace fairdiv {

enum class OracleKind { Additive, Xos, BudgetAdditive, Coverage };

OracleKind oracle_kind_from_string(const std::string& s);
std::string to_string(OracleKind k);

struct RandomParams {
    int clauses = 3;            // xos
    double cap_fraction = 0.5;  // budget-additive: cap = fraction * sum(values)
    int universe = 0;           // coverage; 0 means 2*m (at least 1)
    double density = 0.3;       // coverage element-inclusion probability
};

// Seeded, reproducible instance of the requested kind. Additive-style values
// are uniform on [0, 10].
Instance gen_random(OracleKind kind, int n, int m, std::uint64_t seed,
                    const RandomParams& params = {});

// Seeded uniform random partition of [n^2] into n blocks of size n.
std::vector<GoodSet> xos_hard_partition(int n, std::uint64_t seed);

// XOS family over m = n^2 goods with a hard-to-distinguish structure:
//   f(T) = max(min(|T|, floor((1+delta) n^{4 delta})), (1+delta)|T| / n^{1-2 delta})
// and, for the non-identical variant, v_i(T) = max(f(T), |T_i intersect T|)
// for a hidden random block T_i. The closed form is value-equivalent to the
// exponential clause-list definition.
class XosHardValuation final : public Valuation {
public:
    XosHardValuation(int n, double delta, std::uint64_t seed, bool identical, int agent_index);

    double value(const GoodSet& s) const override;
    int good_count() const override { return n_ * n_; }
    std::string kind() const override { return "xos_hard"; }
    nlohmann::json to_json() const override;

    double common_value(int bundle_size) const;  // f as a function of |T|
    const GoodSet& personal_block() const { return block_; }

private:
    int n_ = 0;
    double delta_ = 0.0;
    std::uint64_t seed_ = 0;
    bool identical_ = true;
    int agent_index_ = 0;
    int size_cap_ = 0;       // floor((1+delta) n^{4 delta})
    double linear_coef_ = 0; // (1+delta) / n^{1-2 delta}
    GoodSet block_;          // T_i, empty in the identical variant
    std::vector<std::uint64_t> block_mask_;
};

// n >= 2, 0 < delta < 1/4. identical: every agent evaluates the common f.
Instance gen_xos_hard(int n, double delta, std::uint64_t seed, bool identical);

// Reduction instance from a multiset of positive integers: n = m = |s|,
// agents 0 and 1 additive with values s, remaining agents all-zero.
Instance gen_partition_reduction(const std::vector<long long>& s);

// The welfare value (2/m)^{1/p} * z/2 attainable at p in (0,1) exactly when
// s splits into two halves of equal sum; z = sum(s).
double partition_target(const std::vector<long long>& s, double p);

}  // namespace fairdiv
