#include "fairdiv/matching.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <string>

#include "fairdiv/errors.hpp"

namespace fairdiv {

namespace {

constexpr long double kLdInf = std::numeric_limits<long double>::max() / 4;

void require_left_perfect(const WeightMatrix& w) {
    if (w.rows() > w.cols())
        throw InfeasibleError("left-perfect matching needs n <= m (" + std::to_string(w.rows()) +
                              " agents, " + std::to_string(w.cols()) + " goods)");
    if (w.rows() < 1) throw std::invalid_argument("weight matrix needs at least one row");
}

// Rectangular assignment by shortest augmenting paths with potentials,
// minimizing the matched sum. Arithmetic in long double so that +-1e300
// sentinel entries never overflow. Ties resolve to the lowest column index.
std::vector<int> assignment_min(const WeightMatrix& a) {
    const int n = a.rows(), m = a.cols();
    std::vector<long double> u(static_cast<size_t>(n) + 1, 0), v(static_cast<size_t>(m) + 1, 0);
    std::vector<int> match(static_cast<size_t>(m) + 1, 0);  // column -> row, 1-indexed
    std::vector<int> way(static_cast<size_t>(m) + 1, 0);

    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<long double> minv(static_cast<size_t>(m) + 1, kLdInf);
        std::vector<char> used(static_cast<size_t>(m) + 1, 0);
        do {
            used[static_cast<size_t>(j0)] = 1;
            const int i0 = match[static_cast<size_t>(j0)];
            long double delta = kLdInf;
            int j1 = -1;
            for (int j = 1; j <= m; ++j) {
                if (used[static_cast<size_t>(j)]) continue;
                const long double cur = static_cast<long double>(a.at(i0 - 1, j - 1)) -
                                        u[static_cast<size_t>(i0)] - v[static_cast<size_t>(j)];
                if (cur < minv[static_cast<size_t>(j)]) {
                    minv[static_cast<size_t>(j)] = cur;
                    way[static_cast<size_t>(j)] = j0;
                }
                if (minv[static_cast<size_t>(j)] < delta) {
                    delta = minv[static_cast<size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= m; ++j) {
                if (used[static_cast<size_t>(j)]) {
                    u[static_cast<size_t>(match[static_cast<size_t>(j)])] += delta;
                    v[static_cast<size_t>(j)] -= delta;
                } else {
                    minv[static_cast<size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (match[static_cast<size_t>(j0)] != 0);
        do {
            const int j1 = way[static_cast<size_t>(j0)];
            match[static_cast<size_t>(j0)] = match[static_cast<size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> pi(static_cast<size_t>(n), -1);
    for (int j = 1; j <= m; ++j)
        if (match[static_cast<size_t>(j)] != 0) pi[static_cast<size_t>(match[static_cast<size_t>(j)]) - 1] = j - 1;
    return pi;
}

MatchingResult finish_sum(const WeightMatrix& w, std::vector<int> pi) {
    MatchingResult r;
    r.assignment = std::move(pi);
    // Plain double accumulation in agent order, the same arithmetic a caller
    // re-summing the matched edges would use.
    double total = 0;
    for (int i = 0; i < w.rows(); ++i) {
        const double e = w.at(i, r.assignment[static_cast<size_t>(i)]);
        total += e;
        if (std::abs(e) >= kSentinel) r.used_sentinel = true;
    }
    r.objective = total;
    return r;
}

// Hopcroft-Karp on the subgraph of edges with weight >= threshold; true iff
// every row can be matched.
bool perfect_at_threshold(const WeightMatrix& w, double threshold) {
    const int n = w.rows(), m = w.cols();
    const int kFree = -1;
    std::vector<int> match_row(static_cast<size_t>(n), kFree), match_col(static_cast<size_t>(m), kFree);
    std::vector<int> dist(static_cast<size_t>(n), 0);
    constexpr int kInfDist = std::numeric_limits<int>::max();

    auto bfs = [&]() {
        std::queue<int> q;
        bool reachable_free = false;
        for (int i = 0; i < n; ++i) {
            if (match_row[static_cast<size_t>(i)] == kFree) {
                dist[static_cast<size_t>(i)] = 0;
                q.push(i);
            } else {
                dist[static_cast<size_t>(i)] = kInfDist;
            }
        }
        while (!q.empty()) {
            const int i = q.front();
            q.pop();
            for (int j = 0; j < m; ++j) {
                if (w.at(i, j) < threshold) continue;
                const int next = match_col[static_cast<size_t>(j)];
                if (next == kFree) {
                    reachable_free = true;
                } else if (dist[static_cast<size_t>(next)] == kInfDist) {
                    dist[static_cast<size_t>(next)] = dist[static_cast<size_t>(i)] + 1;
                    q.push(next);
                }
            }
        }
        return reachable_free;
    };

    std::function<bool(int)> dfs = [&](int i) {
        for (int j = 0; j < m; ++j) {
            if (w.at(i, j) < threshold) continue;
            const int next = match_col[static_cast<size_t>(j)];
            if (next == kFree ||
                (dist[static_cast<size_t>(next)] == dist[static_cast<size_t>(i)] + 1 && dfs(next))) {
                match_row[static_cast<size_t>(i)] = j;
                match_col[static_cast<size_t>(j)] = i;
                return true;
            }
        }
        dist[static_cast<size_t>(i)] = kInfDist;
        return false;
    };

    int matched = 0;
    while (bfs()) {
        for (int i = 0; i < n; ++i)
            if (match_row[static_cast<size_t>(i)] == kFree && dfs(i)) ++matched;
    }
    return matched == n;
}

std::vector<int> matching_at_threshold(const WeightMatrix& w, double threshold) {
    const int n = w.rows(), m = w.cols();
    std::vector<int> match_row(static_cast<size_t>(n), -1), match_col(static_cast<size_t>(m), -1);
    std::function<bool(int, std::vector<char>&)> augment = [&](int i, std::vector<char>& seen) {
        for (int j = 0; j < m; ++j) {
            if (seen[static_cast<size_t>(j)] || w.at(i, j) < threshold) continue;
            seen[static_cast<size_t>(j)] = 1;
            if (match_col[static_cast<size_t>(j)] == -1 || augment(match_col[static_cast<size_t>(j)], seen)) {
                match_row[static_cast<size_t>(i)] = j;
                match_col[static_cast<size_t>(j)] = i;
                return true;
            }
        }
        return false;
    };
    for (int i = 0; i < n; ++i) {
        std::vector<char> seen(static_cast<size_t>(m), 0);
        augment(i, seen);
    }
    return match_row;
}

}  // namespace

MatchingResult min_weight_matching(const WeightMatrix& w) {
    require_left_perfect(w);
    return finish_sum(w, assignment_min(w));
}

MatchingResult max_weight_matching(const WeightMatrix& w) {
    require_left_perfect(w);
    WeightMatrix neg(w.rows(), w.cols());
    for (int i = 0; i < w.rows(); ++i)
        for (int j = 0; j < w.cols(); ++j) neg.at(i, j) = -w.at(i, j);
    return finish_sum(w, assignment_min(neg));
}

MatchingResult bottleneck_matching(const WeightMatrix& w) {
    require_left_perfect(w);
    std::vector<double> weights;
    weights.reserve(static_cast<size_t>(w.rows()) * static_cast<size_t>(w.cols()));
    for (int i = 0; i < w.rows(); ++i)
        for (int j = 0; j < w.cols(); ++j) weights.push_back(w.at(i, j));
    std::sort(weights.begin(), weights.end());
    weights.erase(std::unique(weights.begin(), weights.end()), weights.end());

    // Largest threshold admitting a left-perfect matching; the smallest weight
    // always works on a complete graph with n <= m.
    size_t lo = 0, hi = weights.size() - 1;
    while (lo < hi) {
        const size_t mid = lo + (hi - lo + 1) / 2;
        if (perfect_at_threshold(w, weights[mid]))
            lo = mid;
        else
            hi = mid - 1;
    }

    MatchingResult r;
    r.assignment = matching_at_threshold(w, weights[lo]);
    double min_edge = std::numeric_limits<double>::infinity();
    for (int i = 0; i < w.rows(); ++i) {
        const double e = w.at(i, r.assignment[static_cast<size_t>(i)]);
        min_edge = std::min(min_edge, e);
        if (std::abs(e) >= kSentinel) r.used_sentinel = true;
    }
    r.objective = min_edge;
    return r;
}

}  // namespace fairdiv
