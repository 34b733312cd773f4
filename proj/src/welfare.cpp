#include "fairdiv/welfare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fairdiv {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

WelfareParam WelfareParam::egalitarian() { return WelfareParam{-kInf, {}}; }

double log_sum_exp(std::span<const double> args) {
    if (args.empty()) return -kInf;
    double hi = *std::max_element(args.begin(), args.end());
    if (std::isinf(hi)) return hi;  // all -inf, or a +inf term dominates
    double sum = 0.0;
    for (double a : args) sum += std::exp(a - hi);
    return hi + std::log(sum);
}

namespace {

struct Weighted {
    std::span<const double> x;
    std::span<const double> eta;  // empty means all ones
    double weight_sum = 0.0;

    double eta_at(size_t i) const { return eta.empty() ? 1.0 : eta[i]; }
};

Weighted prepare(std::span<const double> values, const WelfareParam& param) {
    if (values.empty()) throw std::invalid_argument("p_mean of an empty list");
    for (double v : values)
        if (!(v >= 0.0)) throw std::invalid_argument("p_mean values must be nonnegative");
    if (!param.weights.empty() && param.weights.size() != values.size())
        throw std::invalid_argument("weight count must match value count");
    double wsum = 0.0;
    for (size_t i = 0; i < values.size(); ++i) {
        double w = param.weights.empty() ? 1.0 : param.weights[i];
        if (!(w >= 0.0)) throw std::invalid_argument("weights must be nonnegative");
        wsum += w;
    }
    if (!(wsum > 0.0)) throw std::invalid_argument("weight sum must be positive");
    return Weighted{values, param.weights, wsum};
}

}  // namespace

double p_mean(std::span<const double> values, const WelfareParam& param) {
    const double p = param.p;
    if (p > 1.0) throw std::invalid_argument("p must lie in (-inf, 1]");
    Weighted in = prepare(values, param);
    const size_t n = values.size();

    if (std::isinf(p) && p < 0.0) {
        double lo = kInf;
        for (size_t i = 0; i < n; ++i)
            if (in.eta_at(i) > 0.0) lo = std::min(lo, values[i]);
        return std::isinf(lo) ? 0.0 : lo;  // all-zero weights are rejected earlier
    }

    if (p == 1.0) {
        double acc = 0.0;
        for (size_t i = 0; i < n; ++i) acc += in.eta_at(i) * values[i];
        return acc / in.weight_sum;
    }

    if (p == 0.0) {
        double acc = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double w = in.eta_at(i);
            if (w == 0.0) continue;
            if (values[i] == 0.0) return 0.0;
            acc += w * std::log(values[i]);
        }
        return std::exp(acc / in.weight_sum);
    }

    if (p < 0.0) {
        for (size_t i = 0; i < n; ++i)
            if (in.eta_at(i) > 0.0 && values[i] == 0.0) return 0.0;
    }

    // Finite nonzero p: M = exp((1/p) * (log sum_i eta_i x_i^p - log sum eta)).
    std::vector<double> terms;
    terms.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        const double w = in.eta_at(i);
        if (w == 0.0) continue;
        if (values[i] == 0.0) continue;  // only reachable for p > 0, term is 0
        terms.push_back(std::log(w) + p * std::log(values[i]));
    }
    if (terms.empty()) return 0.0;
    const double lse = log_sum_exp(terms);
    return std::exp((lse - std::log(in.weight_sum)) / p);
}

double nsw(std::span<const double> values) { return p_mean(values, WelfareParam::nash()); }

double effective_p(double p, int n) {
    if (n >= 2 && p <= -static_cast<double>(n) * std::log2(static_cast<double>(n))) return -kInf;
    return p;
}

}  // namespace fairdiv
