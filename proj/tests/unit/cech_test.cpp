#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "perstat/cech.hpp"
#include "oracles.hpp"

using namespace perstat;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

namespace {

// dimension-0 component count at a radius, by union-find over edges
int components_at(const PointCloud& cloud, double radius) {
    const int n = static_cast<int>(cloud.size());
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[static_cast<std::size_t>(a)] != a) a = parent[static_cast<std::size_t>(a)];
        return a;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (euclidean_distance(cloud.points[static_cast<std::size_t>(i)],
                                   cloud.points[static_cast<std::size_t>(j)]) / 2.0 <= radius)
                parent[static_cast<std::size_t>(find(i))] = find(j);
    int c = 0;
    for (int i = 0; i < n; ++i)
        if (find(i) == i) ++c;
    return c;
}

}  // namespace

TEST_CASE("filtration of a two-point cloud") {
    auto cloud = make_cloud({{0.0, 0.0}, {2.0, 0.0}});
    auto f = build_cech_filtration(cloud, 1, 5.0);
    REQUIRE(f.simplices.size() == 3);
    CHECK(f.simplices[0].vertices == std::vector<int>{0});
    CHECK(f.simplices[0].value == 0.0);
    CHECK(f.simplices[1].vertices == std::vector<int>{1});
    CHECK(f.simplices[2].vertices == std::vector<int>{0, 1});
    CHECK(f.simplices[2].value == doctest::Approx(1.0));
}

TEST_CASE("filtration of the empty cloud is empty") {
    auto f = build_cech_filtration(make_cloud({}), 2, 1.0);
    CHECK(f.simplices.empty());
    CHECK(compute_persistence(f, 0).diagram.empty());
    CHECK(compute_persistence(f, 1).diagram.empty());
}

TEST_CASE("three collinear points: edges at half distances") {
    auto cloud = make_cloud({{0.0}, {1.0}, {2.0}});
    auto f = build_cech_filtration(cloud, 1, 5.0);
    std::vector<double> edge_values;
    for (const auto& s : f.simplices)
        if (s.dim() == 1) edge_values.push_back(s.value);
    std::sort(edge_values.begin(), edge_values.end());
    REQUIRE(edge_values.size() == 3);
    CHECK(edge_values[0] == doctest::Approx(0.5));
    CHECK(edge_values[1] == doctest::Approx(0.5));
    CHECK(edge_values[2] == doctest::Approx(1.0));
}

TEST_CASE("duplicate points are collapsed with a warning count") {
    auto cloud = make_cloud({{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}});
    auto f = build_cech_filtration(cloud, 1, 5.0);
    CHECK(f.collapsed_duplicates == 1);
    CHECK(f.n_vertices == 2);
    auto res = compute_persistence(f, 0);
    CHECK(res.collapsed_duplicates == 1);
}

TEST_CASE("face monotonicity holds on random filtrations") {
    Rng rng(11);
    for (int rep = 0; rep < 10; ++rep) {
        auto cloud = oracle::random_cloud(rng, 8);
        auto f = build_cech_filtration(cloud, 2, 2.0);
        std::map<std::vector<int>, double> value_of;
        for (const auto& s : f.simplices) value_of[s.vertices] = s.value;
        for (const auto& s : f.simplices) {
            if (s.dim() == 0) {
                CHECK(s.value == 0.0);
                continue;
            }
            for (std::size_t drop = 0; drop < s.vertices.size(); ++drop) {
                std::vector<int> facet;
                for (std::size_t i = 0; i < s.vertices.size(); ++i)
                    if (i != drop) facet.push_back(s.vertices[i]);
                REQUIRE(value_of.count(facet) == 1);
                CHECK(value_of[facet] <= s.value);
            }
        }
        // sorted
        for (std::size_t i = 1; i < f.simplices.size(); ++i)
            CHECK(filtration_order(f.simplices[i - 1], f.simplices[i]));
    }
}

TEST_CASE("persistence of a two-point merge") {
    auto cloud = make_cloud({{0.0, 0.0}, {2.0, 0.0}});
    auto res = cloud_diagram(cloud, 0);
    REQUIRE(res.diagram.size() == 1);
    CHECK(res.diagram.pairs[0].birth == 0.0);
    CHECK(res.diagram.pairs[0].death == doctest::Approx(1.0));
    CHECK(res.discarded_classes == 1);  // the essential component
}

TEST_CASE("eight points on the unit circle have one loop") {
    std::vector<Point> pts;
    for (int i = 0; i < 8; ++i) {
        const double a = 2.0 * kPi * i / 8.0;
        pts.push_back({std::cos(a), std::sin(a)});
    }
    auto cloud = make_cloud(pts);
    auto f = build_cech_filtration(cloud, 2, 2.5);
    auto res = compute_persistence(f, 1);
    REQUIRE(res.diagram.size() == 1);
    const double chord_half = std::sin(kPi / 8.0);
    CHECK(res.diagram.pairs[0].birth == doctest::Approx(chord_half).epsilon(1e-12));
    CHECK(res.diagram.pairs[0].death == doctest::Approx(1.0).epsilon(1e-12));
    // independent naive reduction agrees
    auto slow = oracle::naive_reduction(f, 1);
    CHECK(res.diagram == slow);
}

TEST_CASE("reduction matches the naive oracle exactly on random clouds") {
    Rng rng(42);
    for (int rep = 0; rep < 12; ++rep) {
        const int n = 3 + static_cast<int>(rng.below(6));  // 3..8 points
        auto cloud = oracle::random_cloud(rng, n);
        auto f = build_cech_filtration(cloud, 2, 2.0);
        for (int k : {0, 1}) {
            auto fast = compute_persistence(f, k).diagram;
            auto slow = oracle::naive_reduction(f, k);
            CHECK(fast == slow);
        }
    }
}

TEST_CASE("diagram is invariant under point relabelling") {
    Rng rng(5);
    auto cloud = oracle::random_cloud(rng, 9);
    auto base = cloud_diagram(cloud, 0, 2.0).diagram;
    for (int rep = 0; rep < 5; ++rep) {
        auto shuffled = cloud;
        for (std::size_t i = shuffled.points.size(); i > 1; --i)
            std::swap(shuffled.points[i - 1], shuffled.points[rng.below(i)]);
        CHECK(cloud_diagram(shuffled, 0, 2.0).diagram == base);
    }
}

TEST_CASE("dimension-0 pair count is points minus components at max radius") {
    Rng rng(99);
    for (int rep = 0; rep < 10; ++rep) {
        auto cloud = oracle::random_cloud(rng, 12);
        const double radius = rng.uniform(0.05, 0.6);
        auto f = build_cech_filtration(cloud, 1, radius);
        auto res = compute_persistence(f, 0);
        const int expect =
            static_cast<int>(cloud.size()) - components_at(cloud, radius);
        CHECK(static_cast<int>(res.diagram.size()) + res.zero_length_removed == expect);
    }
}

TEST_CASE("contract violations are rejected") {
    auto cloud = make_cloud({{0.0, 0.0}, {2.0, 0.0}});
    auto f = build_cech_filtration(cloud, 1, 5.0);
    std::swap(f.simplices[0], f.simplices[2]);
    CHECK_THROWS_AS(compute_persistence(f, 0), std::invalid_argument);

    auto g = build_cech_filtration(cloud, 1, 5.0);
    g.simplices.erase(g.simplices.begin());  // missing face
    CHECK_THROWS_AS(compute_persistence(g, 0), std::invalid_argument);

    auto h = build_cech_filtration(cloud, 1, 5.0);
    h.simplices[2].value = -1.0;  // breaks monotonicity and order
    CHECK_THROWS_AS(compute_persistence(h, 0), std::invalid_argument);
}
