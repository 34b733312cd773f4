#pragma once

#include <vector>

namespace fairdiv {

// Magnitude used to encode "avoid this edge if at all possible".
inline constexpr double kSentinel = 1e300;

// Dense n x m weight matrix for the complete agent-by-good bipartite graph.
// Left-perfect matchings need n <= m.
class WeightMatrix {
public:
    WeightMatrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), w_(static_cast<size_t>(rows) * static_cast<size_t>(cols), fill) {}

    double& at(int i, int j) { return w_[static_cast<size_t>(i) * cols_ + j]; }
    double at(int i, int j) const { return w_[static_cast<size_t>(i) * cols_ + j]; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

private:
    int rows_, cols_;
    std::vector<double> w_;
};

struct MatchingResult {
    std::vector<int> assignment;  // agent -> good, injective
    double objective = 0.0;       // matched weight sum, or min weight for bottleneck
    bool used_sentinel = false;   // some matched edge had |w| >= kSentinel
};

// Left-perfect matching maximizing the sum of matched weights.
// Throws InfeasibleError when rows > cols.
MatchingResult max_weight_matching(const WeightMatrix& w);

// Left-perfect matching minimizing the sum of matched weights.
MatchingResult min_weight_matching(const WeightMatrix& w);

// Left-perfect matching maximizing the minimum matched weight, found by
// binary search over the distinct weights with a perfect-matching test on the
// threshold subgraph. The objective is always one of the input weights.
MatchingResult bottleneck_matching(const WeightMatrix& w);

}  // namespace fairdiv
