#pragma once

// Cech filtrations of finite point clouds and their persistence diagrams.
// A simplex enters the filtration at the radius of the minimal enclosing
// ball of its vertices (closed Euclidean balls). Persistence is computed
// by boundary-matrix column reduction over GF(2).

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "perstat/diagram.hpp"
#include "perstat/geometry.hpp"

namespace perstat {

struct FilteredSimplex {
    std::vector<int> vertices;  // sorted
    double value = 0;

    int dim() const { return static_cast<int>(vertices.size()) - 1; }

    friend bool operator==(const FilteredSimplex&, const FilteredSimplex&) = default;
};

struct CechFiltration {
    std::vector<FilteredSimplex> simplices;  // sorted by (value, dim, vertices)
    int n_vertices = 0;
    int collapsed_duplicates = 0;  // warning: duplicate input points collapsed
};

inline bool filtration_order(const FilteredSimplex& a, const FilteredSimplex& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    return a.vertices < b.vertices;
}

// All simplices of dimension <= max_dim with filtration value <= max_radius.
// Duplicate points are collapsed (counted in the result) rather than
// rejected, since noisy generators can collide.
inline CechFiltration build_cech_filtration(const PointCloud& cloud, int max_dim,
                                            double max_radius) {
    if (!(max_radius > 0)) throw std::domain_error("cech: max_radius must be > 0");
    if (max_dim < 0) throw std::domain_error("cech: max_dim must be >= 0");
    cloud.validate();

    CechFiltration out;
    if (cloud.empty()) return out;

    // collapse exact duplicates
    std::vector<Point> pts;
    pts.reserve(cloud.size());
    for (const auto& p : cloud.points) {
        if (std::find(pts.begin(), pts.end(), p) == pts.end())
            pts.push_back(p);
        else
            ++out.collapsed_duplicates;
    }
    const int n = static_cast<int>(pts.size());
    out.n_vertices = n;

    for (int i = 0; i < n; ++i) out.simplices.push_back({{i}, 0.0});

    // edge graph; an edge enters at half its length
    std::vector<std::vector<int>> nbrs(static_cast<std::size_t>(n));
    if (max_dim >= 1) {
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const double v = euclidean_distance(pts[static_cast<std::size_t>(i)],
                                                    pts[static_cast<std::size_t>(j)]) / 2.0;
                if (v <= max_radius) {
                    out.simplices.push_back({{i, j}, v});
                    nbrs[static_cast<std::size_t>(i)].push_back(j);
                }
            }
        }
    }

    // higher simplices: cliques in the edge graph, filtered by the minimal
    // enclosing ball radius of their vertices (which dominates every face)
    if (max_dim >= 2) {
        std::vector<int> clique;
        std::vector<Point> sub;
        auto extend = [&](auto&& self, const std::vector<int>& candidates) -> void {
            if (static_cast<int>(clique.size()) > max_dim) return;
            for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
                const int v = candidates[ci];
                clique.push_back(v);
                if (clique.size() >= 3) {
                    sub.clear();
                    for (int u : clique) sub.push_back(pts[static_cast<std::size_t>(u)]);
                    const double val = min_enclosing_ball_radius(sub);
                    if (val > max_radius) {  // supersets only grow
                        clique.pop_back();
                        continue;
                    }
                    out.simplices.push_back({clique, val});
                }
                // candidates after v must also neighbour v (keeps cliques sorted)
                std::vector<int> next;
                const auto& nb = nbrs[static_cast<std::size_t>(v)];
                std::set_intersection(nb.begin(), nb.end(),
                                      candidates.begin() + static_cast<std::ptrdiff_t>(ci) + 1,
                                      candidates.end(), std::back_inserter(next));
                self(self, next);
                clique.pop_back();
            }
        };
        std::vector<int> all(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
        extend(extend, all);
    }

    std::sort(out.simplices.begin(), out.simplices.end(), filtration_order);
    return out;
}

struct PersistenceResult {
    PersistenceDiagram diagram;
    int discarded_classes = 0;     // essential or unpaired at max_radius
    int zero_length_removed = 0;   // birth == death pairs
    int collapsed_duplicates = 0;  // propagated input warning
};

namespace detail {

struct VertexKeyHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = 1469598103934665603ULL;
        for (int x : v) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b9;
            h *= 1099511628211ULL;
        }
        return h;
    }
};

}  // namespace detail

// Standard column reduction; returns dimension-k pairs with positive
// persistence. The essential class and anything unpaired within range is
// discarded and counted.
inline PersistenceResult compute_persistence(const CechFiltration& filtration, int feature_dim) {
    if (feature_dim < 0) throw std::domain_error("cech: feature_dim must be >= 0");
    PersistenceResult result;
    result.diagram.feature_dim = feature_dim;
    result.collapsed_duplicates = filtration.collapsed_duplicates;

    const auto& simplices = filtration.simplices;
    const std::size_t n = simplices.size();
    if (n == 0) return result;

    std::unordered_map<std::vector<int>, std::size_t, detail::VertexKeyHash> index_of;
    index_of.reserve(n * 2);
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && !filtration_order(simplices[i - 1], simplices[i]))
            throw std::invalid_argument("cech: filtration is not sorted");
        if (index_of.count(simplices[i].vertices))
            throw std::invalid_argument("cech: duplicate simplex in filtration");
        index_of[simplices[i].vertices] = i;
    }

    // boundary columns (facet indices, sorted)
    std::vector<std::vector<std::size_t>> columns(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& vs = simplices[i].vertices;
        if (vs.size() == 1) continue;
        std::vector<int> facet;
        facet.reserve(vs.size() - 1);
        auto& col = columns[i];
        for (std::size_t drop = 0; drop < vs.size(); ++drop) {
            facet.clear();
            for (std::size_t j = 0; j < vs.size(); ++j)
                if (j != drop) facet.push_back(vs[j]);
            const auto it = index_of.find(facet);
            if (it == index_of.end())
                throw std::invalid_argument("cech: filtration is missing a face");
            if (simplices[it->second].value > simplices[i].value)
                throw std::invalid_argument("cech: filtration is not face-monotone");
            col.push_back(it->second);
        }
        std::sort(col.begin(), col.end());
    }

    std::vector<std::size_t> pivot_owner(n, static_cast<std::size_t>(-1));
    std::vector<char> is_creator(n, 0);
    std::vector<char> killed(n, 0);
    std::vector<std::size_t> merged;

    for (std::size_t j = 0; j < n; ++j) {
        auto& col = columns[j];
        while (!col.empty()) {
            const std::size_t low = col.back();
            const std::size_t owner = pivot_owner[low];
            if (owner == static_cast<std::size_t>(-1)) break;
            // col ^= columns[owner]
            merged.clear();
            std::set_symmetric_difference(col.begin(), col.end(), columns[owner].begin(),
                                          columns[owner].end(), std::back_inserter(merged));
            col.swap(merged);
        }
        if (col.empty()) {
            is_creator[j] = 1;
        } else {
            const std::size_t low = col.back();
            pivot_owner[low] = j;
            killed[low] = 1;
            const int class_dim = simplices[low].dim();
            if (class_dim == feature_dim) {
                const double birth = simplices[low].value;
                const double death = simplices[j].value;
                if (death > birth)
                    result.diagram.pairs.push_back({birth, death});
                else
                    ++result.zero_length_removed;
            }
        }
    }
    for (std::size_t j = 0; j < n; ++j)
        if (is_creator[j] && !killed[j] && simplices[j].dim() == feature_dim)
            ++result.discarded_classes;

    result.diagram.sort();
    return result;
}

// Full pipeline for one cloud. max_radius <= 0 selects the default: the
// cloud diameter, which guarantees every non-essential class dies in range.
inline PersistenceResult cloud_diagram(const PointCloud& cloud, int feature_dim,
                                       double max_radius = 0.0) {
    double radius = max_radius;
    if (!(radius > 0)) {
        radius = cloud_diameter(cloud);
        if (!(radius > 0)) radius = 1.0;  // single point / empty cloud
    }
    const auto filtration = build_cech_filtration(cloud, feature_dim + 1, radius);
    return compute_persistence(filtration, feature_dim);
}

}  // namespace perstat
