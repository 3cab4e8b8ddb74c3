#pragma once

// Persistence diagrams: finite multisets of (birth, death) pairs for one
// feature dimension, finite persistence only.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace perstat {

struct PersistencePair {
    double birth = 0;
    double death = 0;

    double persistence() const { return death - birth; }
    // l-infinity distance from the pair to the diagonal; the nearest
    // diagonal point is ((birth+death)/2, (birth+death)/2).
    double diagonal_gap() const { return (death - birth) / 2.0; }

    friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
    friend auto operator<=>(const PersistencePair&, const PersistencePair&) = default;
};

inline double linf_distance(const PersistencePair& a, const PersistencePair& b) {
    return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

struct PersistenceDiagram {
    std::vector<PersistencePair> pairs;
    int feature_dim = 0;

    std::size_t size() const { return pairs.size(); }
    bool empty() const { return pairs.empty(); }

    void sort() { std::sort(pairs.begin(), pairs.end()); }

    void validate() const {
        for (const auto& p : pairs) {
            if (!std::isfinite(p.birth) || !std::isfinite(p.death))
                throw std::domain_error("diagram: non-finite pair");
            if (!(p.birth >= 0.0) || !(p.death > p.birth))
                throw std::domain_error("diagram: pairs need 0 <= birth < death");
        }
    }

    friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;
};

inline PersistenceDiagram make_diagram(std::vector<PersistencePair> pairs, int feature_dim = 0) {
    PersistenceDiagram d;
    d.pairs = std::move(pairs);
    d.feature_dim = feature_dim;
    d.sort();
    d.validate();
    return d;
}

// sum of (death - birth)^p over the diagram
inline double total_persistence(const PersistenceDiagram& d, double p) {
    double s = 0;
    for (const auto& pr : d.pairs) s += std::pow(pr.persistence(), p);
    return s;
}

}  // namespace perstat
