#pragma once

/**
 * @file git_toy.hpp
 * @brief C* weight actions on projective space, the hyperbola quotient and mu_n.
 *
 * t . [z_0 : ... : z_k] = [t^{w_0} z_0 : ... : t^{w_k} z_k]. A point with
 * support S is semistable iff its lifted orbit closure avoids the origin,
 * i.e. min_{i in S} w_i <= 0 <= max_{i in S} w_i.
 */

#include <algorithm>
#include <complex>
#include <cstdint>
#include <set>
#include <utility>
#include <stdexcept>
#include <vector>

#include "halfplane.hpp"

namespace ellmod {

struct WeightAction {
    std::vector<std::int64_t> weights;

    explicit WeightAction(std::vector<std::int64_t> w) : weights(std::move(w)) {
        if (weights.empty()) throw std::invalid_argument("WeightAction: weights must be nonempty");
    }

    std::size_t size() const { return weights.size(); }
};

using Support = std::set<std::size_t>;

inline bool hm_semistable(const WeightAction& w, const Support& support) {
    if (support.empty()) throw std::invalid_argument("hm_semistable: support must be nonempty");
    std::int64_t lo = 0, hi = 0;
    bool first = true;
    for (std::size_t i : support) {
        if (i >= w.size()) throw std::out_of_range("hm_semistable: coordinate index out of range");
        const std::int64_t v = w.weights[i];
        lo = first ? v : std::min(lo, v);
        hi = first ? v : std::max(hi, v);
        first = false;
    }
    return lo <= 0 && 0 <= hi;
}

/// Minimal semistable supports. A point is semistable iff its support
/// contains one of them. Ordered by size, then lexicographically.
inline std::vector<Support> semistable_locus_description(const WeightAction& w) {
    const std::size_t n = w.size();
    if (n > 20) throw std::invalid_argument("semistable_locus_description: at most 20 coordinates");
    std::vector<Support> all;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        Support s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) s.insert(i);
        if (hm_semistable(w, s)) all.push_back(std::move(s));
    }
    std::sort(all.begin(), all.end(), [](const Support& a, const Support& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    std::vector<Support> minimal;
    for (const auto& s : all) {
        const bool covered = std::any_of(minimal.begin(), minimal.end(), [&](const Support& m) {
            return std::includes(s.begin(), s.end(), m.begin(), m.end());
        });
        if (!covered) minimal.push_back(s);
    }
    return minimal;
}

/// Invariant of t . (z1, z2) = (t z1, t^-1 z2).
inline cplx hyperbola_invariant(cplx z1, cplx z2) { return z1 * z2; }

inline bool orbit_closure_equivalent(std::pair<cplx, cplx> p, std::pair<cplx, cplx> q, double tol) {
    return std::abs(hyperbola_invariant(p.first, p.second) - hyperbola_invariant(q.first, q.second)) <= tol;
}

inline bool mu_n_equivalent(int n, cplx z, cplx w, double tol) {
    if (n < 1) throw std::invalid_argument("mu_n_equivalent: n must be >= 1");
    return std::abs(std::pow(z, n) - std::pow(w, n)) <= tol;
}

} // namespace ellmod
