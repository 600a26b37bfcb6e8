#pragma once

/**
 * @file modular_forms.hpp
 * @brief Eisenstein series, Weierstrass invariants, discriminant and j.
 *
 * G_k(tau) = sum'_{(m,n)} (m tau + n)^-k. The fast path reduces tau into the
 * fundamental domain (|q| <= e^{-pi sqrt 3} there) and sums
 *   G_k = 2 zeta(k) + 2 (2 pi i)^k / (k-1)! * sum_{n>=1} sigma_{k-1}(n) q^n,
 * then transforms back with G_k(tau) = (c tau + d)^-k G_k(A tau).
 * In particular G_4 = (pi^4/45) E_4 and G_6 = (2 pi^6/945) E_6.
 */

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "errors.hpp"
#include "halfplane.hpp"
#include "lattice_torus.hpp"
#include "precision.hpp"

namespace ellmod {

namespace detail {

inline void check_weight(int k) {
    if (k < 4 || k % 2 != 0) throw std::invalid_argument("eisenstein: weight must be an even integer >= 4");
    if (k > 64) throw std::invalid_argument("eisenstein: weight above 64 not supported");
}

// zeta(k) for k >= 4: partial sum to 1000 plus the Euler-Maclaurin tail.
inline long double zeta_uncached(int k) {
    constexpr int n = 1000;
    long double s = 0;
    for (int j = n - 1; j >= 1; --j) s += std::pow(static_cast<long double>(j), -k);
    const long double nn = n;
    const long double kk = k;
    s += std::pow(nn, 1 - kk) / (kk - 1) + 0.5L * std::pow(nn, -kk) + kk / 12.0L * std::pow(nn, -kk - 1) -
         kk * (kk + 1) * (kk + 2) / 720.0L * std::pow(nn, -kk - 3);
    return s;
}

inline long double zeta(int k) {
    static const auto table = [] {
        std::array<long double, 65> t{};
        for (int j = 4; j <= 64; j += 2) t[j] = zeta_uncached(j);
        return t;
    }();
    return table[k];
}

inline long double divisor_power_sum(int n, int p) {
    long double s = 0;
    for (int d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        s += std::pow(static_cast<long double>(d), p);
        const int e = n / d;
        if (e != d) s += std::pow(static_cast<long double>(e), p);
    }
    return s;
}

// sum_{n>=1} sigma_{k-1}(n) q^n for |q| < 1
inline std::complex<long double> divisor_series(int k, std::complex<long double> q, const Precision& prec) {
    std::complex<long double> sum = 0, qn = 1;
    for (int n = 1; n <= prec.max_terms * 8; ++n) {
        qn *= q;
        const auto term = divisor_power_sum(n, k - 1) * qn;
        sum += term;
        if (std::abs(term) <= 1e-3L * prec.eps * (1 + std::abs(sum)) && std::abs(qn) < 1e-3L) return sum;
    }
    throw numeric_error("eisenstein: q-series did not converge");
}

// G_k at a point already reduced into the fundamental domain.
inline std::complex<long double> eisenstein_reduced_ld(int k, const HalfPlanePoint& tau, const Precision& prec) {
    using lc = std::complex<long double>;
    constexpr long double pi = std::numbers::pi_v<long double>;
    const lc t(tau.re(), tau.im());
    const lc q = std::exp(lc(0, 2 * pi) * t);
    long double fact = 1; // (k-1)!
    for (int j = 2; j < k; ++j) fact *= j;
    const lc coeff = 2.0L * std::pow(lc(0, 2 * pi), k) / fact;
    return 2.0L * zeta(k) + coeff * divisor_series(k, q, prec);
}

inline cplx eisenstein_reduced(int k, const HalfPlanePoint& tau, const Precision& prec) {
    const auto g = eisenstein_reduced_ld(k, tau, prec);
    return {static_cast<double>(g.real()), static_cast<double>(g.imag())};
}

} // namespace detail

inline cplx eisenstein(int k, const HalfPlanePoint& tau, const Precision& prec = {}) {
    detail::check_weight(k);
    prec.validate();
    const Reduction red = reduce(tau, prec);
    const cplx cd = static_cast<double>(red.matrix.c()) * tau.value() + static_cast<double>(red.matrix.d());
    return detail::eisenstein_reduced(k, red.point, prec) / std::pow(cd, k);
}

/// Box-truncated lattice sum sum'_{|m|,|n| <= N} (m mu + n lambda)^-k. Reference
/// only: no acceleration and no tail correction.
inline cplx eisenstein_lattice_sum_oracle(int k, const FramedLattice& l, int n_max) {
    detail::check_weight(k);
    if (n_max < 1) throw std::invalid_argument("eisenstein_lattice_sum_oracle: N must be >= 1");
    const cplx lam = l.lambda(), mu = l.mu();
    const int half = k / 2;
    cplx total = 0.0;
    for (int m = -n_max; m <= n_max; ++m) {
        cplx row = 0.0;
        const cplx base = double(m) * mu;
        for (int n = -n_max; n <= n_max; ++n) {
            if (m == 0 && n == 0) continue;
            const cplx w = base + double(n) * lam;
            const cplx w2 = w * w;
            const cplx inv2 = std::conj(w2) / std::norm(w2);
            cplx p = inv2;
            for (int j = 1; j < half; ++j) p *= inv2;
            row += p;
        }
        total += row;
    }
    return total;
}

struct WeierstrassInvariants {
    cplx g2, g3;
};

/// g2 = 60 G4, g3 = 140 G6 for the lattice Z + Z tau.
inline WeierstrassInvariants weierstrass_invariants(const HalfPlanePoint& tau, const Precision& prec = {}) {
    return {60.0 * eisenstein(4, tau, prec), 140.0 * eisenstein(6, tau, prec)};
}

/// g2, g3 of an arbitrary lattice: g2(alpha L) = alpha^-4 g2(L), g3 scales by alpha^-6.
inline WeierstrassInvariants weierstrass_invariants(const FramedLattice& l, const Precision& prec = {}) {
    const auto g = weierstrass_invariants(tau_of(l), prec);
    const cplx l2 = l.lambda() * l.lambda();
    return {g.g2 / (l2 * l2), g.g3 / (l2 * l2 * l2)};
}

inline cplx discriminant(const HalfPlanePoint& tau, const Precision& prec = {}) {
    // Evaluate at the reduced point in extended precision (g2^3 and 27 g3^2
    // nearly cancel for large Im), then Delta(tau) = (c tau + d)^-12 Delta(A tau).
    prec.validate();
    const Reduction red = reduce(tau, prec);
    const auto g2 = 60.0L * detail::eisenstein_reduced_ld(4, red.point, prec);
    const auto g3 = 140.0L * detail::eisenstein_reduced_ld(6, red.point, prec);
    const auto d_ld = g2 * g2 * g2 - 27.0L * g3 * g3;
    const cplx cd = static_cast<double>(red.matrix.c()) * tau.value() + static_cast<double>(red.matrix.d());
    const cplx delta = cplx(static_cast<double>(d_ld.real()), static_cast<double>(d_ld.imag())) / std::pow(cd, 12);
    if (!(std::abs(delta) > std::numeric_limits<double>::min()) || !std::isfinite(std::abs(delta))) {
        throw numeric_error("discriminant: value below representable floor");
    }
    return delta;
}

/// j = 1728 g2^3 / (g2^3 - 27 g3^2), evaluated at the reduced point.
inline cplx j_invariant(const HalfPlanePoint& tau, const Precision& prec = {}) {
    prec.validate();
    const HalfPlanePoint t = reduce(tau, prec).point;
    const auto g2 = 60.0L * detail::eisenstein_reduced_ld(4, t, prec);
    const auto g3 = 140.0L * detail::eisenstein_reduced_ld(6, t, prec);
    const auto g23 = g2 * g2 * g2;
    const auto delta = g23 - 27.0L * g3 * g3;
    if (!(std::abs(delta) > 0)) throw numeric_error("j_invariant: vanishing discriminant");
    const auto j = 1728.0L * g23 / delta;
    return {static_cast<double>(j.real()), static_cast<double>(j.imag())};
}

} // namespace ellmod
