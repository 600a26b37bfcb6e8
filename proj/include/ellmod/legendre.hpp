#pragma once

/**
 * @file legendre.hpp
 * @brief The Legendre family y^2 = x(x-1)(x-u).
 *
 * S3 acts on the parameter on the right through f_sigma(u) = 1 - u and
 * f_tau(u) = 1/u. lambda_hat is the S3-invariant rational function with
 * j = 256 lambda_hat(u). period_lattice integrates dx/y around two branch
 * slits to recover a lattice whose tau lies in the modular orbit of u.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "halfplane.hpp"
#include "lattice_torus.hpp"
#include "precision.hpp"

namespace ellmod {

/// A Legendre parameter u, at distance > tol from 0 and 1.
class LegendreParameter {
public:
    explicit LegendreParameter(cplx u, double tol = 1e-9) : u_(u) {
        if (!std::isfinite(u.real()) || !std::isfinite(u.imag())) {
            throw std::invalid_argument("LegendreParameter: u must be finite");
        }
        if (!(std::abs(u) > tol) || !(std::abs(u - 1.0) > tol)) {
            throw std::domain_error("LegendreParameter: u must avoid 0 and 1");
        }
    }

    cplx value() const { return u_; }

private:
    cplx u_;
};

enum class S3Letter { sigma, tau };

/// Parses a word such as "st" or "sigma,tau" (s/sigma, t/tau).
inline std::vector<S3Letter> parse_s3_word(std::string_view text) {
    std::vector<S3Letter> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char ch = text[i];
        if (ch == ',' || ch == ' ') {
            ++i;
        } else if (text.substr(i, 5) == "sigma") {
            out.push_back(S3Letter::sigma);
            i += 5;
        } else if (text.substr(i, 3) == "tau") {
            out.push_back(S3Letter::tau);
            i += 3;
        } else if (ch == 's') {
            out.push_back(S3Letter::sigma);
            ++i;
        } else if (ch == 't') {
            out.push_back(S3Letter::tau);
            ++i;
        } else {
            throw std::invalid_argument("S3 word: unexpected character '" + std::string(1, ch) + "'");
        }
    }
    return out;
}

/// Right action: the word x1 x2 ... acts as f_{x1} first, then f_{x2}, ...
/// (f_{sigma tau} = f_tau o f_sigma).
inline LegendreParameter s3_act(const std::vector<S3Letter>& word, const LegendreParameter& u, double tol = 1e-9) {
    cplx v = u.value();
    for (S3Letter l : word) v = (l == S3Letter::sigma) ? 1.0 - v : 1.0 / v;
    return LegendreParameter(v, tol);
}

/// Closure of {u} under f_sigma and f_tau, deduplicated at tol.
inline std::vector<cplx> s3_orbit(const LegendreParameter& u, double tol = 1e-9) {
    std::vector<cplx> orbit{u.value()};
    for (std::size_t k = 0; k < orbit.size(); ++k) {
        for (cplx img : {1.0 - orbit[k], 1.0 / orbit[k]}) {
            const bool seen = std::any_of(orbit.begin(), orbit.end(), [&](cplx w) { return std::abs(w - img) <= tol; });
            if (!seen) orbit.push_back(img);
        }
    }
    return orbit;
}

/// (1 + u(u-1))^3 / (u(u-1))^2
inline cplx lambda_hat(const LegendreParameter& u) {
    const cplx v = u.value();
    const cplx w = v * (v - 1.0);
    const cplx num = 1.0 + w;
    return num * num * num / (w * w);
}

/// g2, g3 of the Legendre cubic after the change of variables to
/// y^2 = 4x^3 - g2 x - g3 used for the j-invariant (real cube root of 4).
inline std::pair<cplx, cplx> legendre_invariants(const LegendreParameter& u) {
    const cplx v = u.value();
    const cplx g2 = std::cbrt(4.0) / 3.0 * (1.0 + v * (v - 1.0));
    const cplx g3 = (v + 1.0) * (2.0 * v * v - 5.0 * v + 2.0) / 27.0;
    return {g2, g3};
}

inline cplx j_from_u(const LegendreParameter& u) { return 256.0 * lambda_hat(u); }

namespace detail {

struct GaussLegendreRule {
    std::vector<double> nodes, weights; // on [-1, 1]
};

inline GaussLegendreRule make_gauss_legendre(int n) {
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1 - x * x) * dp * dp);
    }
    return rule;
}

inline const GaussLegendreRule& gauss_legendre_20() {
    static const GaussLegendreRule rule = make_gauss_legendre(20);
    return rule;
}

} // namespace detail

/// I = integral from a to b of dx / sqrt((x-a)(x-b)(x-c)) along the straight
/// segment, up to an overall sign, for c off the segment.
///
/// x = a + (b - a) sin^2(theta) removes the endpoint singularities:
///   I = 2 * integral_0^{pi/2} dtheta / sqrt(c - x(theta)).
/// c - x(theta) runs along a segment avoiding 0, so rotating it by the
/// argument of its midpoint keeps the principal square root continuous.
inline cplx branch_segment_integral(cplx a, cplx b, cplx c, const Precision& prec = {}) {
    const cplx mid = c - 0.5 * (a + b);
    const cplx rot = std::polar(1.0, -std::arg(mid));
    const cplx half_rot = std::polar(1.0, 0.5 * std::arg(mid));
    const auto& rule = detail::gauss_legendre_20();
    const double len = std::numbers::pi / 2;

    auto composite = [&](int panels) {
        cplx sum = 0.0;
        const double h = len / panels;
        for (int p = 0; p < panels; ++p) {
            const double lo = p * h;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const double th = lo + 0.5 * h * (rule.nodes[i] + 1.0);
                const double s = std::sin(th);
                const cplx w = c - (a + (b - a) * (s * s));
                sum += rule.weights[i] * 0.5 * h / (std::sqrt(w * rot) * half_rot);
            }
        }
        return 2.0 * sum;
    };

    cplx prev = composite(2);
    for (int panels = 4; panels <= (1 << 16); panels *= 2) {
        const cplx cur = composite(panels);
        if (std::abs(cur - prev) <= prec.eps * std::abs(cur)) return cur;
        prev = cur;
    }
    throw numeric_error("period quadrature did not converge");
}

/// Periods of dx/y around two branch slits. The slits are the two shorter
/// sides of the triangle {0, 1, u}, which share the vertex opposite the
/// longest side; loops around them form a basis of H_1.
inline FramedLattice period_lattice(const LegendreParameter& u, const Precision& prec = {}) {
    prec.validate();
    const cplx e0 = 0.0, e1 = 1.0, eu = u.value();
    const double s01 = 1.0, s1u = std::abs(eu - 1.0), s0u = std::abs(eu);
    cplx first, middle, last;
    if (s01 >= s1u && s01 >= s0u) {
        first = e0, middle = eu, last = e1;
    } else if (s1u >= s0u) {
        first = e1, middle = e0, last = eu;
    } else {
        first = e0, middle = e1, last = eu;
    }
    cplx w1 = 2.0 * branch_segment_integral(first, middle, last, prec);
    cplx w2 = 2.0 * branch_segment_integral(middle, last, first, prec);
    const double im = (w2 / w1).imag();
    if (!(std::fabs(im) > 1e-6)) throw numeric_error("period_lattice: periods are numerically dependent");
    if (im < 0) std::swap(w1, w2);
    return FramedLattice(w1, w2);
}

inline HalfPlanePoint tau_from_u(const LegendreParameter& u, const Precision& prec = {}) {
    return reduce(tau_of(period_lattice(u, prec)), prec).point;
}

/// [X:Y:Z] on y^2 z = x (x - z)(x - u z), residual checked after scaling the
/// largest coordinate to modulus 1.
inline bool curve_membership(const LegendreParameter& u, const ProjectivePoint& p, double tol) {
    const double scale = std::max({std::abs(p[0]), std::abs(p[1]), std::abs(p[2])});
    if (!(scale > 0)) throw std::invalid_argument("curve_membership: point must not be all zero");
    const cplx x = p[0] / scale, y = p[1] / scale, z = p[2] / scale;
    const cplx r = y * y * z - x * (x - z) * (x - u.value() * z);
    return std::abs(r) <= tol;
}

} // namespace ellmod
