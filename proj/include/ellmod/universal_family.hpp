#pragma once

/**
 * @file universal_family.hpp
 * @brief Z^2 x| SL(2,Z) acting on h x C.
 *
 *   ((m,n), A) . (tau, z) = (A tau, (z + m tau + n) / (c tau + d))
 *
 * This is a left action for the law
 *   (v1, A1)(v2, A2) = (v2 + v1 A2, A1 A2),   v a row vector (m, n).
 */

#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>
#include <utility>

#include "halfplane.hpp"
#include "lattice_torus.hpp"
#include "modular_group.hpp"
#include "precision.hpp"

namespace ellmod {

struct AffineGroupElement {
    std::int64_t m = 0, n = 0;
    SL2Matrix mat;

    static AffineGroupElement identity() { return {}; }
    static AffineGroupElement translation(std::int64_t m, std::int64_t n) { return {m, n, SL2Matrix()}; }
    static AffineGroupElement linear(const SL2Matrix& a) { return {0, 0, a}; }

    bool operator==(const AffineGroupElement&) const = default;

    friend std::ostream& operator<<(std::ostream& os, const AffineGroupElement& h) {
        return os << "((" << h.m << "," << h.n << ")," << h.mat << ")";
    }
};

inline AffineGroupElement group_multiply(const AffineGroupElement& h1, const AffineGroupElement& h2) {
    using detail::checked_add;
    using detail::checked_dot;
    const SL2Matrix& a = h2.mat;
    return {checked_add(h2.m, checked_dot(h1.m, a.a(), h1.n, a.c())),
            checked_add(h2.n, checked_dot(h1.m, a.b(), h1.n, a.d())), h1.mat * h2.mat};
}

inline AffineGroupElement operator*(const AffineGroupElement& h1, const AffineGroupElement& h2) {
    return group_multiply(h1, h2);
}

inline AffineGroupElement group_inverse(const AffineGroupElement& h) {
    // (v, A)^-1 = (-v A^-1, A^-1)
    const SL2Matrix ai = inverse(h.mat);
    using detail::checked_dot;
    using detail::checked_neg;
    return {checked_neg(checked_dot(h.m, ai.a(), h.n, ai.c())), checked_neg(checked_dot(h.m, ai.b(), h.n, ai.d())),
            ai};
}

struct TotalSpacePoint {
    HalfPlanePoint tau;
    cplx z;
};

/// j(A, tau) = c tau + d
inline cplx automorphy_factor(const SL2Matrix& a, const HalfPlanePoint& tau) {
    return static_cast<double>(a.c()) * tau.value() + static_cast<double>(a.d());
}

inline TotalSpacePoint act_total(const AffineGroupElement& h, const TotalSpacePoint& p) {
    const cplx t = p.tau.value();
    const cplx shifted = p.z + static_cast<double>(h.m) * t + static_cast<double>(h.n);
    return {act(h.mat, p.tau), shifted / automorphy_factor(h.mat, p.tau)};
}

/// True iff z1 - z2 lies in Z + Z tau, within tol in cell coordinates.
inline bool fiber_points_equal(const HalfPlanePoint& tau, cplx z1, cplx z2, double tol = 1e-9) {
    const auto cc = detail::cell_coordinates(FramedLattice::standard(tau), z1 - z2);
    return std::fabs(cc.t - std::round(cc.t)) <= tol && std::fabs(cc.s - std::round(cc.s)) <= tol;
}

/// Reduces tau into the fundamental domain and then z into the half-open
/// cell of Z + Z tau*. Returns the canonical point and h with h . p = p*.
inline std::pair<TotalSpacePoint, AffineGroupElement> canonical_rep(const TotalSpacePoint& p,
                                                                   const Precision& prec = {}) {
    const Reduction red = reduce(p.tau, prec);
    const AffineGroupElement h_a = AffineGroupElement::linear(red.matrix);
    const cplx z1 = act_total(h_a, p).z;
    const auto cc = detail::cell_coordinates(FramedLattice::standard(red.point), z1);
    const auto ft = static_cast<std::int64_t>(detail::snapped_floor(cc.t));
    const auto fs = static_cast<std::int64_t>(detail::snapped_floor(cc.s));
    const AffineGroupElement h = group_multiply(AffineGroupElement::translation(-ft, -fs), h_a);
    const cplx z2 = z1 - static_cast<double>(ft) * red.point.value() - static_cast<double>(fs);
    return {{red.point, z2}, h};
}

} // namespace ellmod
