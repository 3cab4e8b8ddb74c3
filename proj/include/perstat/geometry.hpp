#pragma once

// Point clouds, hyper-rectangular domains, the minimal enclosing ball
// (the Cech filtration value of a simplex) and the Hausdorff distance.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "perstat/util.hpp"

namespace perstat {

using Point = std::vector<double>;

struct PointCloud {
    std::vector<Point> points;
    int dim = 0;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }

    void validate() const {
        if (!points.empty() && dim < 1)
            throw std::domain_error("geometry: point cloud with points needs dim >= 1");
        for (const auto& p : points) {
            if (static_cast<int>(p.size()) != dim)
                throw std::domain_error("geometry: point dimension mismatch");
            for (double c : p)
                if (!std::isfinite(c)) throw std::domain_error("geometry: non-finite coordinate");
        }
    }
};

inline PointCloud make_cloud(std::vector<Point> pts) {
    PointCloud c;
    c.dim = pts.empty() ? 0 : static_cast<int>(pts.front().size());
    c.points = std::move(pts);
    c.validate();
    return c;
}

// Axis-aligned box domain.
struct Domain {
    std::vector<double> lo, hi;

    int dim() const { return static_cast<int>(lo.size()); }

    double diameter() const {
        double s = 0;
        for (std::size_t i = 0; i < lo.size(); ++i) s += (hi[i] - lo[i]) * (hi[i] - lo[i]);
        return std::sqrt(s);
    }
    double min_extent() const {
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < lo.size(); ++i) m = std::min(m, hi[i] - lo[i]);
        return m;
    }
    void clip(Point& p) const {
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::clamp(p[i], lo[i], hi[i]);
    }
    void validate() const {
        if (lo.size() != hi.size() || lo.empty())
            throw std::domain_error("geometry: malformed domain");
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (!(lo[i] < hi[i])) throw std::domain_error("geometry: domain needs lo < hi");
    }
};

inline Domain unit_box(int d) {
    Domain dom;
    dom.lo.assign(static_cast<std::size_t>(d), 0.0);
    dom.hi.assign(static_cast<std::size_t>(d), 1.0);
    return dom;
}

inline double squared_distance(const Point& a, const Point& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

inline double euclidean_distance(const Point& a, const Point& b) {
    return std::sqrt(squared_distance(a, b));
}

inline double cloud_diameter(const PointCloud& c) {
    double d2 = 0;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j)
            d2 = std::max(d2, squared_distance(c.points[i], c.points[j]));
    return std::sqrt(d2);
}

namespace detail {

// Circumcenter of an affinely independent subset, restricted to its affine
// hull: solve the Gram system for c = p0 + sum lambda_i (p_i - p0) with
// |c - p_i| equal for all i. Returns false when the subset is (numerically)
// affinely dependent; a smaller subset then realises the same ball.
inline bool circumsphere(std::span<const Point* const> pts, Point& center, double& radius) {
    const std::size_t k = pts.size() - 1;
    const Point& p0 = *pts[0];
    if (k == 0) {
        center = p0;
        radius = 0;
        return true;
    }
    std::vector<std::vector<double>> a(k, std::vector<double>(k + 1, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            double dot = 0;
            for (std::size_t c = 0; c < p0.size(); ++c)
                dot += ((*pts[i + 1])[c] - p0[c]) * ((*pts[j + 1])[c] - p0[c]);
            a[i][j] = 2.0 * dot;
        }
        a[i][k] = squared_distance(*pts[i + 1], p0);
    }
    // Gaussian elimination with partial pivoting.
    double scale = 0;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) scale = std::max(scale, std::abs(a[i][j]));
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < k; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) <= 1e-12 * std::max(scale, 1.0)) return false;
        std::swap(a[piv], a[col]);
        for (std::size_t r = 0; r < k; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c <= k; ++c) a[r][c] -= f * a[col][c];
        }
    }
    center = p0;
    for (std::size_t i = 0; i < k; ++i) {
        const double lambda = a[i][k] / a[i][i];
        for (std::size_t c = 0; c < p0.size(); ++c)
            center[c] += lambda * ((*pts[i + 1])[c] - p0[c]);
    }
    radius = euclidean_distance(center, p0);
    return true;
}

}  // namespace detail

// Radius of the smallest closed Euclidean ball containing all points.
// Exact combinatorial search over boundary subsets of size <= d+1: the
// optimal ball is the smallest among the candidate balls that enclose
// everything.
inline double min_enclosing_ball_radius(std::span<const Point> points) {
    if (points.empty())
        throw std::domain_error("geometry: min_enclosing_ball_radius of empty set");
    for (const auto& p : points)
        for (double c : p)
            if (!std::isfinite(c)) throw std::domain_error("geometry: non-finite coordinate");

    // deduplicate
    std::vector<const Point*> uniq;
    uniq.reserve(points.size());
    for (const auto& p : points) {
        bool seen = false;
        for (const Point* q : uniq)
            if (*q == p) { seen = true; break; }
        if (!seen) uniq.push_back(&p);
    }
    const std::size_t n = uniq.size();
    if (n == 1) return 0.0;
    const std::size_t d = uniq[0]->size();
    const std::size_t max_support = std::min(n, d + 1);

    double best = std::numeric_limits<double>::infinity();
    std::vector<const Point*> subset;
    Point center;
    double radius = 0;

    // enumerate subsets of size 2..max_support (size-1 subsets are never
    // optimal once n > 1)
    std::vector<std::size_t> idx;
    auto consider = [&] {
        if (!detail::circumsphere(std::span<const Point* const>(subset.data(), subset.size()),
                                  center, radius))
            return;
        if (radius >= best) return;
        const double limit2 = radius * radius * (1.0 + 1e-12) + 1e-300;
        for (const Point* q : uniq)
            if (squared_distance(center, *q) > limit2) return;
        best = radius;
    };
    auto rec = [&](auto&& self, std::size_t start, std::size_t want) -> void {
        if (want == 0) {
            consider();
            return;
        }
        for (std::size_t i = start; i + want <= n; ++i) {
            subset.push_back(uniq[i]);
            self(self, i + 1, want - 1);
            subset.pop_back();
        }
    };
    for (std::size_t k = 2; k <= max_support; ++k) rec(rec, 0, k);

    if (!std::isfinite(best))
        throw std::domain_error("geometry: min enclosing ball search failed");
    return best;
}

// Hausdorff distance between two non-empty finite clouds.
inline double hausdorff_distance(const PointCloud& x, const PointCloud& y) {
    if (x.empty() || y.empty())
        throw std::domain_error("geometry: hausdorff_distance needs non-empty clouds");
    auto directed = [](const PointCloud& a, const PointCloud& b) {
        double worst = 0;
        for (const auto& p : a.points) {
            double nearest = std::numeric_limits<double>::infinity();
            for (const auto& q : b.points) nearest = std::min(nearest, squared_distance(p, q));
            worst = std::max(worst, nearest);
        }
        return worst;
    };
    return std::sqrt(std::max(directed(x, y), directed(y, x)));
}

}  // namespace perstat
