#pragma once

#include <span>
#include <vector>

namespace fairdiv {

// Exponent p in (-inf, 1] plus optional per-agent weights (empty = symmetric).
struct WelfareParam {
    double p = 0.0;
    std::vector<double> weights;

    static WelfareParam nash() { return WelfareParam{0.0, {}}; }
    static WelfareParam egalitarian();
};

// Generalized (power) mean of nonnegative values:
//   p=1 arithmetic, p=0 geometric, p=-inf min; any zero value gives 0 for
//   p <= 0. Weighted variants normalize by the weight sum; the geometric case
//   is (prod x_i^{w_i})^{1/sum w}. Evaluated through logs so that very
//   negative exponents neither overflow nor underflow.
double p_mean(std::span<const double> values, const WelfareParam& param);

// Geometric mean, zero if any value is zero.
double nsw(std::span<const double> values);

// Routing rule for extreme exponents: for n >= 2 and p <= -n*log2(n), the
// p-mean is within a factor 2^{1/n} of the min, so the egalitarian variant is
// used instead. Returns -inf in that regime, p unchanged otherwise.
double effective_p(double p, int n);

// log(sum exp(a_i)) with the usual max shift; -inf for an empty list.
double log_sum_exp(std::span<const double> args);

}  // namespace fairdiv
