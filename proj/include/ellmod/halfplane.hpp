#pragma once

/**
 * @file halfplane.hpp
 * @brief SL(2,Z) acting on the upper half-plane.
 *
 * Covers the Möbius action, the Poincaré distance, reduction to the
 * fundamental domain F = {|tau| >= 1, -1/2 <= Re tau <= 1/2}, stabilizers,
 * enumeration of the finitely many elements that move a point by a bounded
 * distance, Dirichlet-domain membership and orbifold charts.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "modular_group.hpp"
#include "precision.hpp"

namespace ellmod {

using cplx = std::complex<double>;

/// A point of the upper half-plane; construction rejects Im <= 0.
class HalfPlanePoint {
public:
    explicit HalfPlanePoint(cplx v) : v_(v) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || !(v.imag() > 0)) {
            throw std::invalid_argument("HalfPlanePoint: imaginary part must be > 0");
        }
    }
    HalfPlanePoint(double re, double im) : HalfPlanePoint(cplx(re, im)) {}

    cplx value() const { return v_; }
    double re() const { return v_.real(); }
    double im() const { return v_.imag(); }

    bool operator==(const HalfPlanePoint&) const = default;

private:
    cplx v_;
};

inline HalfPlanePoint point_i() { return HalfPlanePoint(0.0, 1.0); }

/// rho = e^{2 pi i/3}, the corner of F with Re = -1/2.
inline HalfPlanePoint point_rho() { return HalfPlanePoint(-0.5, std::sqrt(3.0) / 2.0); }

namespace detail {

using lcplx = std::complex<long double>;

struct MobiusImage {
    long double re, im;
};

inline MobiusImage mobius(const SL2Matrix& m, long double x, long double y) {
    const long double a = m.a(), b = m.b(), c = m.c(), d = m.d();
    const long double dr = c * x + d, di = c * y;
    const long double nr = a * x + b, ni = a * y;
    const long double den = dr * dr + di * di;
    // Im((a t + b)/(c t + d)) = Im t / |c t + d|^2 since det = 1
    return {(nr * dr + ni * di) / den, y / den};
}

} // namespace detail

inline HalfPlanePoint act(const SL2Matrix& m, const HalfPlanePoint& tau) {
    const auto r = detail::mobius(m, tau.re(), tau.im());
    const double im = static_cast<double>(r.im);
    if (!(im > 0)) throw numeric_error("act: image underflowed to the real axis");
    return HalfPlanePoint(static_cast<double>(r.re), im);
}

/// cosh(d) - 1 for the Poincaré metric, computed without cancellation.
inline double cosh_distance_minus_one(const HalfPlanePoint& z, const HalfPlanePoint& w) {
    return std::norm(z.value() - w.value()) / (2.0 * z.im() * w.im());
}

inline double hyp_distance(const HalfPlanePoint& z, const HalfPlanePoint& w) {
    return 2.0 * std::asinh(std::abs(z.value() - w.value()) / (2.0 * std::sqrt(z.im() * w.im())));
}

enum class DomainPosition { interior, boundary, outside };

inline const char* to_string(DomainPosition p) {
    switch (p) {
    case DomainPosition::interior: return "interior";
    case DomainPosition::boundary: return "boundary";
    case DomainPosition::outside: return "outside";
    }
    return "?";
}

inline DomainPosition in_fundamental_domain(const HalfPlanePoint& tau, double tol) {
    if (!(tol > 0)) throw std::invalid_argument("in_fundamental_domain: tol must be > 0");
    const double r = std::abs(tau.value());
    const double x = std::abs(tau.re());
    if (r > 1 + tol && x < 0.5 - tol) return DomainPosition::interior;
    if (r < 1 - tol || x > 0.5 + tol) return DomainPosition::outside;
    return DomainPosition::boundary;
}

struct Reduction {
    HalfPlanePoint point; // = act(matrix, input)
    SL2Matrix matrix;
};

/// Reduces tau into F.
///
/// Canonical representatives: Re is placed in [-1/2, 1/2) (up to tol), and
/// on the unit arc the representative with Re >= 0 is chosen. The corner
/// orbit {rho, rho + 1} is represented by rho.
inline Reduction reduce(const HalfPlanePoint& tau, const Precision& prec = {}) {
    constexpr double im_floor = 1e-13;
    constexpr int max_iter = 100000;
    if (tau.im() < im_floor) throw numeric_error("reduce: Im(tau) below numeric floor");

    const long double tol = prec.tol;
    long double x = tau.re(), y = tau.im();
    SL2Matrix m;
    bool done = false;
    for (int iter = 0; iter < max_iter; ++iter) {
        const long double shift = std::floor(x + 0.5L + tol);
        if (shift != 0) {
            if (!(std::fabs(shift) < 9e18L)) throw numeric_error("reduce: translation out of range");
            const auto k = static_cast<std::int64_t>(shift);
            x -= shift;
            m = SL2Matrix(1, detail::checked_neg(k), 0, 1) * m;
        }
        const long double r2 = x * x + y * y;
        if (r2 < 1 - tol) {
            x = -x / r2;
            y = y / r2;
            m = generator(Generator::S) * m;
            continue;
        }
        done = true;
        break;
    }
    if (!done) throw numeric_error("reduce: iteration cap reached");

    const long double r2 = x * x + y * y;
    if (std::fabs(r2 - 1) <= tol && x < -tol && x > -0.5L + tol) m = generator(Generator::S) * m;

    return {act(m, tau), m};
}

struct StabilizerDescriptor {
    int order = 2;
    SL2Matrix generator;
    std::vector<SL2Matrix> elements;
};

/// Stabilizer of tau in SL(2,Z): {+-I} generically, order 4 on the orbit of
/// i, order 6 on the orbit of rho. The generator is the exact fixing
/// element at the reduced point, conjugated back by the reduction matrix.
inline StabilizerDescriptor stabilizer(const HalfPlanePoint& tau, const Precision& prec = {}) {
    const Reduction red = reduce(tau, prec);
    const cplx z = red.point.value();
    const cplx i_pt = point_i().value();
    const cplx rho = point_rho().value();

    StabilizerDescriptor out;
    SL2Matrix local = generator(Generator::NegI);
    if (std::abs(z - i_pt) <= prec.tol) {
        out.order = 4;
        local = generator(Generator::S);
    } else if (std::abs(z - rho) <= prec.tol) {
        out.order = 6;
        local = generator(Generator::R); // z -> -1/(z+1) fixes rho
    } else if (std::abs(z - (rho + 1.0)) <= prec.tol) {
        out.order = 6;
        const SL2Matrix t = generator(Generator::T);
        local = t * generator(Generator::R) * inverse(t);
    }
    out.generator = inverse(red.matrix) * local * red.matrix;
    SL2Matrix p;
    for (int k = 0; k < out.order; ++k) {
        out.elements.push_back(p);
        p = p * out.generator;
    }
    return out;
}

/// A with act(A, tau1) ~ tau2, when the two points are in one orbit.
inline std::optional<SL2Matrix> same_orbit(const HalfPlanePoint& tau1, const HalfPlanePoint& tau2,
                                           const Precision& prec = {}) {
    const Reduction r1 = reduce(tau1, prec);
    const Reduction r2 = reduce(tau2, prec);
    if (std::abs(r1.point.value() - r2.point.value()) > prec.tol) return std::nullopt;
    return inverse(r2.matrix) * r1.matrix;
}

// --- Enumeration of group elements by displacement --------------------------

struct Displacement {
    SL2Matrix element;
    double distance = 0;     // d(x0, g x0)
    bool fixes_point = false; // g x0 = x0 within tolerance
};

namespace detail {

// Write x0 = P i with P = y^{-1/2} [[y, x], [0, 1]]. For M = P^-1 g P,
//   cosh d(x0, g x0) = |M|_F^2 / 2,
// and the entries of M are
//   M11 = a - c x,  M21 = c y,  M22 = c x + d,
//   M12 = (b + (a - d) x - c x^2) / y.
// Each entry is bounded by sqrt(2 cosh 2r) when d(x0, g x0) <= 2r, giving
// the enumeration ranges below.
struct EnumerationRanges {
    double frob = 0; // sqrt(2 cosh 2r) plus slack
    std::int64_t c_max = 0;
    std::int64_t certified_bound = 0;
};

inline EnumerationRanges enumeration_ranges(const HalfPlanePoint& x0, double r, double tol) {
    if (!(r >= 0) || !std::isfinite(r)) throw std::invalid_argument("intersecting_elements: r must be >= 0");
    const double x = x0.re(), y = x0.im();
    EnumerationRanges out;
    const double k = 2.0 * std::cosh(2.0 * r) + 4.0 * tol + 1e-12;
    out.frob = std::sqrt(k) * (1 + 1e-12);
    const double cm = std::floor(out.frob / y);
    const double ad = out.frob + cm * std::fabs(x);
    const double bm = y * out.frob + 2.0 * ad * std::fabs(x) + cm * x * x;
    const double bound = std::ceil(std::max({cm, ad, bm, 1.0}));
    if (!(bound < 1e15)) throw numeric_error("intersecting_elements: enumeration bound out of range");
    out.c_max = static_cast<std::int64_t>(cm);
    out.certified_bound = static_cast<std::int64_t>(bound);
    return out;
}

inline std::int64_t ceil_i(double v) { return static_cast<std::int64_t>(std::ceil(v - 1e-12)); }
inline std::int64_t floor_i(double v) { return static_cast<std::int64_t>(std::floor(v + 1e-12)); }

} // namespace detail

/// Entry bound that provably contains every g with d(x0, g x0) <= 2r.
inline std::int64_t certified_entry_bound(const HalfPlanePoint& x0, double r, const Precision& prec = {}) {
    return detail::enumeration_ranges(x0, r, prec.tol).certified_bound;
}

/// All g with |entries| <= entry_bound and d(x0, g x0) <= 2r (+ tol on cosh d),
/// sorted by distance, then by matrix.
inline std::vector<Displacement> displacements_within(const HalfPlanePoint& x0, double r,
                                                      std::int64_t entry_bound, const Precision& prec = {}) {
    using detail::ceil_i;
    using detail::floor_i;
    const auto ranges = detail::enumeration_ranges(x0, r, prec.tol);
    const double x = x0.re(), y = x0.im();
    const double s = ranges.frob;
    // cosh(2r) - 1, with slack matching a distance error of tol
    const double fixed_slack = 0.5 * prec.tol * prec.tol;
    const double limit = 2.0 * std::sinh(r) * std::sinh(r) + fixed_slack;

    std::vector<Displacement> out;
    auto consider = [&](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
        if (std::llabs(a) > entry_bound || std::llabs(b) > entry_bound) return;
        const SL2Matrix g(a, b, c, d);
        const auto img = detail::mobius(g, x, y);
        const long double dx = img.re - x, dy = img.im - y;
        const double ch1 = static_cast<double>((dx * dx + dy * dy) / (2.0L * y * img.im));
        if (ch1 > limit) return;
        out.push_back({g, 2.0 * std::asinh(std::sqrt(ch1 / 2.0)), ch1 <= fixed_slack});
    };

    const std::int64_t c_max = std::min(ranges.c_max, entry_bound);
    for (std::int64_t c = -c_max; c <= c_max; ++c) {
        if (c == 0) {
            const std::int64_t b_lo = ceil_i(-y * s), b_hi = floor_i(y * s);
            for (std::int64_t d : {std::int64_t{1}, std::int64_t{-1}}) {
                for (std::int64_t b = std::max(b_lo, -entry_bound); b <= std::min(b_hi, entry_bound); ++b) {
                    consider(d, b, 0, d);
                }
            }
            continue;
        }
        const double cx = static_cast<double>(c) * x;
        const std::int64_t d_lo = std::max(ceil_i(-cx - s), -entry_bound);
        const std::int64_t d_hi = std::min(floor_i(-cx + s), entry_bound);
        const std::int64_t a_lo = std::max(ceil_i(cx - s), -entry_bound);
        const std::int64_t a_hi = std::min(floor_i(cx + s), entry_bound);
        for (std::int64_t d = d_lo; d <= d_hi; ++d) {
            for (std::int64_t a = a_lo; a <= a_hi; ++a) {
                const __int128 num = static_cast<__int128>(a) * d - 1;
                if (num % c != 0) continue;
                const __int128 b = num / c;
                if (b > entry_bound || b < -entry_bound) continue;
                consider(a, static_cast<std::int64_t>(b), c, d);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Displacement& p, const Displacement& q) {
        if (p.distance != q.distance) return p.distance < q.distance;
        return p.element < q.element;
    });
    return out;
}

/// Like displacements_within, with the certified bound; throws numeric_error
/// when that bound exceeds prec.enum_bound.
inline std::vector<Displacement> displacements(const HalfPlanePoint& x0, double r, const Precision& prec = {}) {
    const std::int64_t bound = certified_entry_bound(x0, r, prec);
    if (bound > prec.enum_bound) {
        throw numeric_error("intersecting_elements: certified entry bound " + std::to_string(bound) +
                            " exceeds enum_bound " + std::to_string(prec.enum_bound));
    }
    return displacements_within(x0, r, bound, prec);
}

/// {g : d(x0, g x0) <= 2r}, the elements for which the closed ball of
/// radius r about x0 meets its translate.
inline std::vector<SL2Matrix> intersecting_elements(const HalfPlanePoint& x0, double r, const Precision& prec = {}) {
    std::vector<SL2Matrix> out;
    for (const auto& e : displacements(x0, r, prec)) out.push_back(e.element);
    std::sort(out.begin(), out.end());
    return out;
}

/// The `count` elements outside the stabilizer of x0 with smallest displacement.
inline std::vector<Displacement> nearest_translates(const HalfPlanePoint& x0, std::size_t count,
                                                    const Precision& prec = {}) {
    double r = 0.25;
    for (int attempt = 0; attempt < 40; ++attempt, r *= 1.5) {
        std::vector<Displacement> moved;
        for (auto& e : displacements(x0, r, prec)) {
            if (!e.fixes_point) moved.push_back(e);
        }
        if (moved.size() >= count) {
            moved.resize(count);
            return moved;
        }
    }
    throw numeric_error("nearest_translates: radius growth exhausted");
}

/// y lies in the Dirichlet domain of x: d(y, x) < d(y, g x) for every g
/// outside the stabilizer of x. Only g with d(x, g x) <= 2 d(x, y) can
/// violate this (triangle inequality), so the check is finite.
inline bool dirichlet_member(const HalfPlanePoint& x, const HalfPlanePoint& y, const Precision& prec = {}) {
    const double dxy = hyp_distance(x, y);
    for (const auto& e : displacements(x, dxy, prec)) {
        if (e.fixes_point) continue;
        if (!(dxy < hyp_distance(y, act(e.element, x)))) return false;
    }
    return true;
}

struct OrbifoldChart {
    HalfPlanePoint center;
    double radius = 0;
    StabilizerDescriptor isotropy;
};

/// Ball about tau preserved by its isotropy and disjoint from all other
/// translates: radius = (1/2 - margin) * (smallest nonzero displacement).
inline OrbifoldChart orbifold_chart(const HalfPlanePoint& tau, const Precision& prec = {}, double margin = 0.01) {
    if (!(margin > 0 && margin < 0.5)) throw std::invalid_argument("orbifold_chart: margin must be in (0, 1/2)");
    const auto nearest = nearest_translates(tau, 1, prec);
    const double delta = nearest.front().distance;
    if (delta < prec.tol) throw numeric_error("orbifold_chart: minimal displacement below tolerance");
    return {tau, (0.5 - margin) * delta, stabilizer(tau, prec)};
}

} // namespace ellmod
