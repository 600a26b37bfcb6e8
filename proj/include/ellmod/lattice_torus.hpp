#pragma once

/**
 * @file lattice_torus.hpp
 * @brief Framed lattices, complex tori C/L and the Weierstrass function.
 *
 * A framed lattice is an ordered basis (lambda, mu) with Im(mu/lambda) > 0.
 * Points of C/L are represented in the half-open cell
 * {s lambda + t mu : s, t in [0,1)}.
 *
 * wp() sums a q-series for the normalized lattice Z + Z tau after reducing
 * tau into the fundamental domain; wp_row_sum() and wp_lattice_sum() are
 * independent evaluations from the defining lattice sum.
 */

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "errors.hpp"
#include "halfplane.hpp"
#include "precision.hpp"

namespace ellmod {

class FramedLattice {
public:
    FramedLattice(cplx lambda, cplx mu) : lambda_(lambda), mu_(mu) {
        if (!(std::abs(lambda) > 0) || !std::isfinite(std::abs(lambda)) || !std::isfinite(std::abs(mu))) {
            throw std::invalid_argument("FramedLattice: lambda must be a nonzero finite complex number");
        }
        if (!((mu / lambda).imag() > 0)) {
            throw std::invalid_argument("FramedLattice: basis must satisfy Im(mu/lambda) > 0");
        }
    }

    /// Z*1 + Z*tau
    static FramedLattice standard(const HalfPlanePoint& tau) { return {1.0, tau.value()}; }

    cplx lambda() const { return lambda_; }
    cplx mu() const { return mu_; }

    bool operator==(const FramedLattice&) const = default;

private:
    cplx lambda_, mu_;
};

inline HalfPlanePoint tau_of(const FramedLattice& l) { return HalfPlanePoint(l.mu() / l.lambda()); }

/// Basis change (mu', lambda')^T = A (mu, lambda)^T, so that tau' = A . tau,
/// followed by scaling: alpha * (lambda', mu') = target basis.
struct LatticeIsomorphism {
    cplx alpha;
    SL2Matrix basis_change;
};

inline FramedLattice change_basis(const FramedLattice& l, const SL2Matrix& a) {
    const double ad = static_cast<double>(a.a()), bd = static_cast<double>(a.b());
    const double cd = static_cast<double>(a.c()), dd = static_cast<double>(a.d());
    return {cd * l.mu() + dd * l.lambda(), ad * l.mu() + bd * l.lambda()};
}

/// alpha L1 = L2 for some alpha in C*, iff the two tau reduce to the same point.
inline std::optional<LatticeIsomorphism> lattice_isomorphic(const FramedLattice& l1, const FramedLattice& l2,
                                                            const Precision& prec = {}) {
    const auto a = same_orbit(tau_of(l1), tau_of(l2), prec);
    if (!a) return std::nullopt;
    const FramedLattice moved = change_basis(l1, *a);
    return LatticeIsomorphism{l2.lambda() / moved.lambda(), *a};
}

namespace detail {

struct CellCoordinates {
    double s, t; // z = s lambda + t mu
};

inline CellCoordinates cell_coordinates(const FramedLattice& l, cplx z) {
    // Solve z = s lambda + t mu over the reals.
    const cplx lam = l.lambda(), mu = l.mu();
    const double det = lam.real() * mu.imag() - lam.imag() * mu.real();
    const double s = (z.real() * mu.imag() - z.imag() * mu.real()) / det;
    const double t = (lam.real() * z.imag() - lam.imag() * z.real()) / det;
    return {s, t};
}

// Fractional part in [0,1) with a 1e-12 snap so that reducing twice is stable.
inline double snapped_floor(double v) { return std::floor(v + 1e-12); }

} // namespace detail

/// Representative of z mod L in the half-open cell [0,1) lambda + [0,1) mu.
inline cplx reduce_mod_lattice(const FramedLattice& l, cplx z) {
    const auto c = detail::cell_coordinates(l, z);
    const double ks = detail::snapped_floor(c.s), kt = detail::snapped_floor(c.t);
    return z - ks * l.lambda() - kt * l.mu();
}

/// Distance from z to the nearest lattice point.
inline double distance_to_lattice(const FramedLattice& l, cplx z) {
    const cplx r = reduce_mod_lattice(l, z);
    double best = std::abs(r);
    for (int i = 0; i <= 1; ++i) {
        for (int j = 0; j <= 1; ++j) best = std::min(best, std::abs(r - double(i) * l.lambda() - double(j) * l.mu()));
    }
    return best;
}

struct TorusPoint {
    FramedLattice lattice;
    cplx rep;

    bool equals(const TorusPoint& other, double tol = 1e-9) const {
        if (!(other.lattice == lattice)) return false;
        return distance_to_lattice(lattice, rep - other.rep) <= tol;
    }
};

struct WpValue {
    cplx value;
    cplx derivative;
};

namespace detail {

// Rewrites wp_L(z) as beta^-2 wp_{Z + Z tau*}(w), wp'_L(z) = beta^-3 wp'(w),
// with tau* reduced and w centered in the cell (|Re|, |Im t| <= 1/2).
struct NormalizedArgument {
    HalfPlanePoint tau;
    cplx w;
    cplx beta;
};

inline NormalizedArgument normalize(const FramedLattice& l, cplx z, const Precision& prec) {
    const HalfPlanePoint tau = tau_of(l);
    const Reduction red = reduce(tau, prec);
    // L = lambda (c tau + d) Lambda(tau*)
    const cplx cd = static_cast<double>(red.matrix.c()) * tau.value() + static_cast<double>(red.matrix.d());
    const cplx beta = l.lambda() * cd;
    cplx w = z / beta;
    const FramedLattice unit = FramedLattice::standard(red.point);
    const auto c = cell_coordinates(unit, w);
    w -= std::round(c.s) + std::round(c.t) * red.point.value();
    return {red.point, w, beta};
}

inline void check_pole(const FramedLattice& l, cplx z, const Precision& prec) {
    if (distance_to_lattice(l, z) <= prec.tol * std::abs(l.lambda())) {
        throw std::domain_error("wp: argument is a lattice point (pole)");
    }
}

// x/(1-x)^2 and its logarithmic derivative companion x(1+x)/(1-x)^3
inline cplx wp_kernel(cplx x) { return x / ((1.0 - x) * (1.0 - x)); }
inline cplx wp_prime_kernel(cplx x) { return x * (1.0 + x) / ((1.0 - x) * (1.0 - x) * (1.0 - x)); }

// wp and wp' for Z + Z tau, from
//   wp(w)/(2 pi i)^2 = 1/12 + u/(1-u)^2 + sum_{n>=1} [F(q^n u) + F(q^n/u) - 2F(q^n)],
// F(x) = x/(1-x)^2, q = e^{2 pi i tau}, u = e^{2 pi i w}.
inline WpValue wp_normalized(const HalfPlanePoint& tau, cplx w, const Precision& prec) {
    using namespace std::complex_literals;
    constexpr double pi = std::numbers::pi;
    const cplx two_pi_i = 2.0 * pi * 1i;
    const cplx q = std::exp(two_pi_i * tau.value());
    const cplx u = std::exp(two_pi_i * w);
    cplx sum = 1.0 / 12.0 + wp_kernel(u);
    cplx dsum = wp_prime_kernel(u);
    cplx qn = 1.0;
    bool converged = false;
    for (int n = 1; n <= prec.max_terms; ++n) {
        qn *= q;
        const cplx x1 = qn * u, x2 = qn / u;
        const cplx term = wp_kernel(x1) + wp_kernel(x2) - 2.0 * wp_kernel(qn);
        const cplx dterm = wp_prime_kernel(x1) - wp_prime_kernel(x2);
        sum += term;
        dsum += dterm;
        // terms are O(|x1| + |x2|); compare against the O(1) scale of the bracket
        if (std::max(std::abs(x1), std::abs(x2)) <= prec.eps * 1e-2) {
            converged = true;
            break;
        }
    }
    if (!converged) throw numeric_error("wp: q-series did not converge within max_terms");
    return {two_pi_i * two_pi_i * sum, two_pi_i * two_pi_i * two_pi_i * dsum};
}

} // namespace detail

inline WpValue wp_with_derivative(const FramedLattice& l, cplx z, const Precision& prec = {}) {
    prec.validate();
    detail::check_pole(l, z, prec);
    const auto n = detail::normalize(l, z, prec);
    const WpValue v = detail::wp_normalized(n.tau, n.w, prec);
    const cplx b2 = n.beta * n.beta;
    return {v.value / b2, v.derivative / (b2 * n.beta)};
}

inline cplx wp(const FramedLattice& l, cplx z, const Precision& prec = {}) { return wp_with_derivative(l, z, prec).value; }

inline cplx wp_prime(const FramedLattice& l, cplx z, const Precision& prec = {}) {
    return wp_with_derivative(l, z, prec).derivative;
}

/// The defining sum with each row summed in closed form,
///   sum_n (w + n)^-2 = pi^2 / sin^2(pi w),
/// and rows m = 0, +-1, +-2, ... added until they fall below eps.
inline cplx wp_row_sum(const FramedLattice& l, cplx z, const Precision& prec = {}) {
    prec.validate();
    detail::check_pole(l, z, prec);
    constexpr double pi = std::numbers::pi;
    const auto n = detail::normalize(l, z, prec);
    const cplx tau = n.tau.value();
    auto csc2 = [](cplx v) {
        const cplx s = std::sin(std::numbers::pi * v);
        return pi * pi / (s * s);
    };
    cplx sum = csc2(n.w) - pi * pi / 3.0;
    bool converged = false;
    for (int m = 1; m <= 4 * prec.max_terms; ++m) {
        const double md = m;
        const cplx row = csc2(n.w - md * tau) + csc2(n.w + md * tau) - 2.0 * csc2(md * tau);
        sum += row;
        if (std::abs(row) <= prec.eps * 1e-2 * (std::abs(sum) + pi * pi)) {
            converged = true;
            break;
        }
    }
    if (!converged) throw numeric_error("wp_row_sum: rows did not converge");
    return sum / (n.beta * n.beta);
}

/// Number of lattice radii needed so that the tail of the paired sum
/// sum_{|w|>R} [1/(z-w)^2 + 1/(z+w)^2 - 2/w^2] is below eps.
///
/// For |w| >= 2|z| each pair is bounded by 11.6 |z|^2 / |w|^4, and the
/// lattice points beyond R are dominated by (2 pi r / area) dr.
inline double wp_lattice_sum_radius(const FramedLattice& l, cplx z, double eps) {
    const double area = std::fabs((std::conj(l.lambda()) * l.mu()).imag());
    const double diam = std::abs(l.lambda()) + std::abs(l.mu());
    const double zz = std::abs(z);
    const double r_tail = std::sqrt(11.6 * std::numbers::pi * zz * zz / (2.0 * area * eps));
    return std::max(diam + r_tail, 2.0 * zz + diam);
}

/// The defining lattice sum 1/z^2 + sum' [1/(z-w)^2 - 1/w^2] over |w| <= R,
/// with R from the tail bound. Cost grows like 1/eps; meant for validation.
inline cplx wp_lattice_sum(const FramedLattice& l, cplx z, double eps) {
    if (!(eps > 0)) throw std::invalid_argument("wp_lattice_sum: eps must be > 0");
    // Sum for the centered representative; the result is periodic.
    const auto c = detail::cell_coordinates(l, z);
    const cplx zc = z - std::round(c.s) * l.lambda() - std::round(c.t) * l.mu();
    if (std::abs(zc) == 0) throw std::domain_error("wp_lattice_sum: argument is a lattice point (pole)");
    const double radius = wp_lattice_sum_radius(l, zc, eps);
    const double r2 = radius * radius;
    const cplx lam = l.lambda(), mu = l.mu();
    const double area = std::fabs((std::conj(lam) * mu).imag());
    // |m mu + n lambda| <= R implies |m| <= R |lambda| / area (and symmetrically for n)
    const auto m_max = static_cast<long>(std::ceil(radius * std::abs(lam) / area));
    const auto n_max = static_cast<long>(std::ceil(radius * std::abs(mu) / area));
    cplx sum = 1.0 / (zc * zc);
    for (long m = -m_max; m <= m_max; ++m) {
        cplx row = 0.0;
        for (long n = -n_max; n <= n_max; ++n) {
            if (m == 0 && n == 0) continue;
            const cplx w = double(m) * mu + double(n) * lam;
            if (std::norm(w) > r2) continue;
            const cplx dz = zc - w;
            row += 1.0 / (dz * dz) - 1.0 / (w * w);
        }
        sum += row;
    }
    return sum;
}

/// (wp(lambda/2), wp(mu/2), wp((lambda+mu)/2)).
inline std::array<cplx, 3> half_period_values(const FramedLattice& l, const Precision& prec = {}) {
    return {wp(l, l.lambda() / 2.0, prec), wp(l, l.mu() / 2.0, prec), wp(l, (l.lambda() + l.mu()) / 2.0, prec)};
}

using ProjectivePoint = std::array<cplx, 3>;

/// [wp(z) : wp'(z) : 1], or the flex [0 : 1 : 0] when z is a lattice point.
inline ProjectivePoint embed(const FramedLattice& l, cplx z, const Precision& prec = {}) {
    if (distance_to_lattice(l, z) <= prec.tol * std::abs(l.lambda())) return {0.0, 1.0, 0.0};
    const WpValue v = wp_with_derivative(l, z, prec);
    return {v.value, v.derivative, 1.0};
}

/// Y^2 Z - 4 (X - v1 Z)(X - v2 Z)(X - v3 Z) after scaling the point so that
/// its largest coordinate has modulus 1.
inline double weierstrass_cubic_residual(const ProjectivePoint& p, const std::array<cplx, 3>& roots) {
    const double scale = std::max({std::abs(p[0]), std::abs(p[1]), std::abs(p[2])});
    if (!(scale > 0)) throw std::invalid_argument("projective point must not be all zero");
    const cplx x = p[0] / scale, y = p[1] / scale, z = p[2] / scale;
    return std::abs(y * y * z - 4.0 * (x - roots[0] * z) * (x - roots[1] * z) * (x - roots[2] * z));
}

using RealMatrix2 = std::array<std::array<double, 2>, 2>;

/// Orientation-preserving R-linear map of C = R^2 sending 1 -> 1 and tau0 -> tau1.
inline RealMatrix2 marking_map(const HalfPlanePoint& tau0, const HalfPlanePoint& tau1) {
    return {{{1.0, (tau1.re() - tau0.re()) / tau0.im()}, {0.0, tau1.im() / tau0.im()}}};
}

inline cplx apply(const RealMatrix2& m, cplx v) {
    return {m[0][0] * v.real() + m[0][1] * v.imag(), m[1][0] * v.real() + m[1][1] * v.imag()};
}

} // namespace ellmod
