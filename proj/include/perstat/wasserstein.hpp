#pragma once

// Exact W_r (1 <= r < inf) and bottleneck distances between persistence
// diagrams, via the diagonal-augmented assignment problem. Ground metric on
// diagram points is l-infinity; the diagonal projection of (b, d) costs
// (d - b)/2. W_r is solved by the Hungarian algorithm on the (n+m) x (n+m)
// augmented cost matrix; the bottleneck distance by binary search over the
// finite set of achievable costs with a matching feasibility check.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "perstat/diagram.hpp"

namespace perstat {

enum class MatchNode { point, diagonal };

struct MatchEdge {
    MatchNode src_kind = MatchNode::point;
    int src_index = -1;  // index into U, or (diagonal) the V point it projects
    MatchNode dst_kind = MatchNode::point;
    int dst_index = -1;  // index into V, or (diagonal) the U point it projects
    double cost = 0;     // l-infinity ground cost of this pair
};

struct Matching {
    std::vector<MatchEdge> pairs;
    double order = 2;        // r, or infinity for bottleneck
    double total_cost = 0;   // (sum cost^r)^(1/r), or max cost for bottleneck
};

struct DistanceResult {
    double distance = 0;
    Matching matching;
};

namespace detail {

// Exact Hungarian algorithm (potentials formulation) for a square cost
// matrix, O(k^3). Returns, for every column j, the assigned row.
inline std::vector<int> hungarian(const std::vector<std::vector<double>>& cost) {
    const int k = static_cast<int>(cost.size());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(static_cast<std::size_t>(k) + 1, 0.0), v(static_cast<std::size_t>(k) + 1, 0.0);
    std::vector<int> p(static_cast<std::size_t>(k) + 1, 0), way(static_cast<std::size_t>(k) + 1, 0);
    for (int i = 1; i <= k; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(static_cast<std::size_t>(k) + 1, inf);
        std::vector<char> used(static_cast<std::size_t>(k) + 1, 0);
        do {
            used[static_cast<std::size_t>(j0)] = 1;
            const int i0 = p[static_cast<std::size_t>(j0)];
            double delta = inf;
            int j1 = -1;
            for (int j = 1; j <= k; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                const double cur = cost[static_cast<std::size_t>(i0 - 1)][static_cast<std::size_t>(j - 1)]
                                   - u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= k; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    minv[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (p[static_cast<std::size_t>(j0)] != 0);
        do {
            const int j1 = way[static_cast<std::size_t>(j0)];
            p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> row_of_col(static_cast<std::size_t>(k));
    for (int j = 1; j <= k; ++j) row_of_col[static_cast<std::size_t>(j - 1)] = p[static_cast<std::size_t>(j)] - 1;
    return row_of_col;
}

// Augmented ground cost: rows are U's points followed by diagonal slots for
// V's points; columns are V's points followed by diagonal slots for U's.
inline double ground_cost(const PersistenceDiagram& u, const PersistenceDiagram& v, int row,
                          int col) {
    const int n = static_cast<int>(u.size());
    const int m = static_cast<int>(v.size());
    const bool row_real = row < n;
    const bool col_real = col < m;
    if (row_real && col_real)
        return linf_distance(u.pairs[static_cast<std::size_t>(row)], v.pairs[static_cast<std::size_t>(col)]);
    if (row_real) return u.pairs[static_cast<std::size_t>(row)].diagonal_gap();
    if (col_real) return v.pairs[static_cast<std::size_t>(col)].diagonal_gap();
    return 0.0;
}

inline void check_diagrams(const PersistenceDiagram& u, const PersistenceDiagram& v) {
    u.validate();
    v.validate();
}

// canonical orientation so that distance(U, V) == distance(V, U) exactly
inline bool swapped_order(const PersistenceDiagram& u, const PersistenceDiagram& v) {
    if (u.size() != v.size()) return u.size() > v.size();
    auto su = u.pairs;
    auto sv = v.pairs;
    std::sort(su.begin(), su.end());
    std::sort(sv.begin(), sv.end());
    return sv < su;
}

inline Matching flip(Matching m) {
    for (auto& e : m.pairs) {
        std::swap(e.src_kind, e.dst_kind);
        std::swap(e.src_index, e.dst_index);
    }
    return m;
}

inline DistanceResult wasserstein_oriented(const PersistenceDiagram& u,
                                           const PersistenceDiagram& v, double r) {
    const int n = static_cast<int>(u.size());
    const int m = static_cast<int>(v.size());
    const int k = n + m;
    DistanceResult out;
    out.matching.order = r;
    if (k == 0) return out;

    std::vector<std::vector<double>> cost(static_cast<std::size_t>(k),
                                          std::vector<double>(static_cast<std::size_t>(k)));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                std::pow(ground_cost(u, v, i, j), r);

    const auto row_of_col = hungarian(cost);
    std::vector<double> addends;
    addends.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        const int i = row_of_col[static_cast<std::size_t>(j)];
        const double g = ground_cost(u, v, i, j);
        addends.push_back(std::pow(g, r));
        MatchEdge e;
        e.src_kind = i < n ? MatchNode::point : MatchNode::diagonal;
        e.src_index = i < n ? i : i - n;
        e.dst_kind = j < m ? MatchNode::point : MatchNode::diagonal;
        e.dst_index = j < m ? j : j - m;
        e.cost = g;
        out.matching.pairs.push_back(e);
    }
    out.distance = std::pow(total, 1.0 / r);
    out.matching.total_cost = out.distance;
    return out;
}

}  // namespace detail

// Exact W_r distance and an optimal matching, 1 <= r < infinity.
inline DistanceResult wasserstein_distance(const PersistenceDiagram& u,
                                           const PersistenceDiagram& v, double r) {
    if (!(r >= 1.0) || !std::isfinite(r))
        throw std::domain_error("wasserstein: order r must satisfy 1 <= r < inf");
    detail::check_diagrams(u, v);
    if (detail::swapped_order(u, v)) {
        auto res = detail::wasserstein_oriented(v, u, r);
        res.matching = detail::flip(std::move(res.matching));
        return res;
    }
    return detail::wasserstein_oriented(u, v, r);
}

namespace detail {

// Kuhn augmenting paths over the implicit "cost <= c" bipartite graph.
inline bool feasible(const PersistenceDiagram& u, const PersistenceDiagram& v, double c) {
    const int n = static_cast<int>(u.size());
    const int m = static_cast<int>(v.size());
    const int k = n + m;
    std::vector<int> match_col(static_cast<std::size_t>(k), -1);  // col -> row
    std::vector<char> visited(static_cast<std::size_t>(k), 0);
    auto try_augment = [&](auto&& self, int row) -> bool {
        for (int col = 0; col < k; ++col) {
            if (visited[static_cast<std::size_t>(col)]) continue;
            if (ground_cost(u, v, row, col) > c) continue;
            visited[static_cast<std::size_t>(col)] = 1;
            if (match_col[static_cast<std::size_t>(col)] < 0 ||
                self(self, match_col[static_cast<std::size_t>(col)])) {
                match_col[static_cast<std::size_t>(col)] = row;
                return true;
            }
        }
        return false;
    };
    for (int row = 0; row < k; ++row) {
        std::fill(visited.begin(), visited.end(), 0);
        if (!try_augment(try_augment, row)) return false;
    }
    return true;
}

inline Matching matching_at(const PersistenceDiagram& u, const PersistenceDiagram& v, double c) {
    const int n = static_cast<int>(u.size());
    const int m = static_cast<int>(v.size());
    const int k = n + m;
    std::vector<int> match_col(static_cast<std::size_t>(k), -1);
    std::vector<char> visited(static_cast<std::size_t>(k), 0);
    auto try_augment = [&](auto&& self, int row) -> bool {
        for (int col = 0; col < k; ++col) {
            if (visited[static_cast<std::size_t>(col)]) continue;
            if (ground_cost(u, v, row, col) > c) continue;
            visited[static_cast<std::size_t>(col)] = 1;
            if (match_col[static_cast<std::size_t>(col)] < 0 ||
                self(self, match_col[static_cast<std::size_t>(col)])) {
                match_col[static_cast<std::size_t>(col)] = row;
                return true;
            }
        }
        return false;
    };
    for (int row = 0; row < k; ++row) {
        std::fill(visited.begin(), visited.end(), 0);
        try_augment(try_augment, row);
    }
    Matching out;
    out.order = std::numeric_limits<double>::infinity();
    double worst = 0;
    for (int col = 0; col < k; ++col) {
        const int row = match_col[static_cast<std::size_t>(col)];
        const double g = ground_cost(u, v, row, col);
        worst = std::max(worst, g);
        MatchEdge e;
        e.src_kind = row < n ? MatchNode::point : MatchNode::diagonal;
        e.src_index = row < n ? row : row - n;
        e.dst_kind = col < m ? MatchNode::point : MatchNode::diagonal;
        e.dst_index = col < m ? col : col - m;
        e.cost = g;
        out.pairs.push_back(e);
    }
    out.total_cost = worst;
    return out;
}

inline DistanceResult bottleneck_oriented(const PersistenceDiagram& u,
                                          const PersistenceDiagram& v) {
    DistanceResult out;
    out.matching.order = std::numeric_limits<double>::infinity();
    const int n = static_cast<int>(u.size());
    const int m = static_cast<int>(v.size());
    if (n + m == 0) return out;

    // candidate costs: every achievable ground cost
    std::vector<double> cand;
    cand.push_back(0.0);
    for (int i = 0; i < n; ++i) {
        cand.push_back(u.pairs[static_cast<std::size_t>(i)].diagonal_gap());
        for (int j = 0; j < m; ++j)
            cand.push_back(linf_distance(u.pairs[static_cast<std::size_t>(i)],
                                         v.pairs[static_cast<std::size_t>(j)]));
    }
    for (int j = 0; j < m; ++j) cand.push_back(v.pairs[static_cast<std::size_t>(j)].diagonal_gap());
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    std::size_t lo = 0, hi = cand.size() - 1;  // feasible at the largest cost
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (feasible(u, v, cand[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    out.distance = cand[lo];
    out.matching = matching_at(u, v, cand[lo]);
    return out;
}

}  // namespace detail

// Exact bottleneck (W_infinity) distance and a witnessing matching.
inline DistanceResult bottleneck_distance(const PersistenceDiagram& u,
                                          const PersistenceDiagram& v) {
    detail::check_diagrams(u, v);
    if (detail::swapped_order(u, v)) {
        auto res = detail::bottleneck_oriented(v, u);
        res.matching = detail::flip(std::move(res.matching));
        return res;
    }
    return detail::bottleneck_oriented(u, v);
}

// Convenience: W_r for finite r, bottleneck when r is infinite.
inline double diagram_distance(const PersistenceDiagram& u, const PersistenceDiagram& v,
                               double r) {
    if (std::isinf(r)) return bottleneck_distance(u, v).distance;
    return wasserstein_distance(u, v, r).distance;
}

}  // namespace perstat
