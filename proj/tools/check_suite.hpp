#pragma once

// Invariant suite behind `ellmod check`. Every check draws from its own
// mt19937_64 seeded from the command-line seed, so reports are reproducible.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ellmod/ellmod.hpp"
#include "ellmod/serialization.hpp"

namespace ellmod::check {

struct SuiteResult {
    std::string name;
    int passed = 0;
    int failed = 0;
    std::vector<std::string> failures; // first few only
};

class Recorder {
public:
    explicit Recorder(std::string name) { res_.name = std::move(name); }

    void expect(bool ok, const std::string& what) {
        if (ok) {
            ++res_.passed;
            return;
        }
        ++res_.failed;
        if (res_.failures.size() < 5) res_.failures.push_back(what);
    }

    // Runs body; an exception counts as one failure.
    void guarded(const std::string& what, const std::function<void()>& body) {
        try {
            body();
        } catch (const std::exception& e) {
            expect(false, what + ": " + e.what());
        }
    }

    SuiteResult result() const { return res_; }

private:
    SuiteResult res_;
};

namespace detail {

inline double unif(std::mt19937_64& g, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g); }

inline SL2Matrix random_matrix(std::mt19937_64& g, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len), letter(0, 2);
    GeneratorWord w;
    for (int i = 0, n = len(g); i < n; ++i) w.letters.push_back(static_cast<Letter>(letter(g)));
    w.sign = letter(g) == 0 ? -1 : 1;
    return evaluate_word(w);
}

inline HalfPlanePoint random_reduced(std::mt19937_64& g) {
    return reduce(HalfPlanePoint(unif(g, -0.5, 0.5), unif(g, 0.3, 2.5))).point;
}

inline LegendreParameter random_u(std::mt19937_64& g) {
    for (;;) {
        const cplx u(unif(g, -5, 5), unif(g, -5, 5));
        if (std::abs(u) > 0.2 && std::abs(u - 1.0) > 0.2 && std::abs(u) < 5) return LegendreParameter(u);
    }
}

inline std::string str(cplx z) {
    std::ostringstream os;
    os << z;
    return os.str();
}

inline bool mixed(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * (1 + std::abs(b)); }

} // namespace detail

inline SuiteResult modular_group_suite(std::mt19937_64 g) {
    Recorder r("modular_group");
    r.expect(verify_presentation().all(), "presentation relations");
    for (int k = 0; k < 300; ++k) {
        const SL2Matrix a = detail::random_matrix(g, 20), b = detail::random_matrix(g, 20);
        r.expect(evaluate_word(decompose_word(a)) == a, "word round trip");
        r.expect(transpose(a * b) == transpose(b) * transpose(a), "transpose anti-automorphism");
    }
    return r.result();
}

inline SuiteResult halfplane_suite(std::mt19937_64 g, const Precision& p) {
    using detail::unif;
    Recorder r("halfplane");
    r.guarded("halfplane", [&] {
        for (int k = 0; k < 300; ++k) {
            const HalfPlanePoint tau(unif(g, -3, 3), std::exp(unif(g, std::log(0.05), std::log(10.0))));
            const SL2Matrix a = detail::random_matrix(g, 10), b = detail::random_matrix(g, 10);
            const HalfPlanePoint w(unif(g, -1, 1), unif(g, 0.5, 2));
            const HalfPlanePoint z(unif(g, -1, 1), unif(g, 0.5, 2));
            const cplx l = act(a * b, z).value(), rr = act(a, act(b, z)).value();
            r.expect(std::abs(l - rr) < 1e-12 * (1 + std::abs(l)), "action law at " + detail::str(z.value()));
            const double d = hyp_distance(z, w);
            r.expect(std::fabs(hyp_distance(act(a, z), act(a, w)) - d) < 1e-12 * (1 + d), "isometry");
            const Reduction red = reduce(tau, p);
            r.expect(in_fundamental_domain(red.point, p.tol) != DomainPosition::outside, "reduce lands in F");
            r.expect(reduce(red.point, p).matrix == SL2Matrix(), "reduce idempotent");
            const HalfPlanePoint moved = act(a, tau);
            if (moved.im() > 1e-12) {
                r.expect(std::abs(reduce(moved, p).point.value() - red.point.value()) < 1e-9, "orbit soundness");
            }
        }
        r.expect(stabilizer(point_i(), p).order == 4, "stabilizer at i");
        r.expect(stabilizer(point_rho(), p).order == 6, "stabilizer at rho");
        r.expect(stabilizer(HalfPlanePoint(0.5, std::sqrt(3.0) / 2), p).order == 6, "stabilizer at rho+1");
        for (int k = 0; k < 20; ++k) {
            const HalfPlanePoint t = detail::random_reduced(g);
            r.expect(stabilizer(t, p).order == 2, "generic stabilizer at " + detail::str(t.value()));
        }
        const auto four = intersecting_elements(point_i(), 0, p);
        r.expect(four.size() == 4, "intersecting_elements(i, 0) has 4 elements");
        std::vector<SL2Matrix> doubled;
        for (auto& e : displacements_within(point_i(), 0, 2 * certified_entry_bound(point_i(), 0, p), p))
            doubled.push_back(e.element);
        std::sort(doubled.begin(), doubled.end());
        r.expect(doubled == four, "bound doubling stable");
        const auto chart = orbifold_chart(HalfPlanePoint(0, 2), p);
        const auto others = nearest_translates(chart.center, 20, p);
        for (int k = 0; k < 100; ++k) {
            const double rad = std::tanh(chart.radius / 2) * std::sqrt(unif(g, 0, 1)) * (1 - 1e-9);
            const cplx w = std::polar(rad, unif(g, 0, 2 * std::numbers::pi));
            const cplx z = cplx(0, 1) * (1.0 + w) / (1.0 - w);
            const HalfPlanePoint y(chart.center.re() + chart.center.im() * z);
            for (const auto& e : others) {
                r.expect(hyp_distance(act(e.element, y), chart.center) > chart.radius, "chart ball disjointness");
            }
        }
    });
    return r.result();
}

inline SuiteResult lattice_suite(std::mt19937_64 g, const Precision& p) {
    using detail::unif;
    Recorder r("lattice_torus");
    r.guarded("lattice_torus", [&] {
        for (int s = 0; s < 10; ++s) {
            const HalfPlanePoint tau = detail::random_reduced(g);
            const FramedLattice l = FramedLattice::standard(tau);
            const auto inv = weierstrass_invariants(tau, p);
            const auto v = half_period_values(l, p);
            r.expect(std::abs(v[0] + v[1] + v[2]) < 1e-9, "half periods sum to zero");
            for (int k = 0; k < 10; ++k) {
                cplx z;
                do {
                    z = unif(g, 0, 1) + unif(g, 0, 1) * tau.value();
                } while (distance_to_lattice(l, z) < 0.1);
                const WpValue wv = wp_with_derivative(l, z, p);
                const cplx res = wv.derivative * wv.derivative - (4.0 * wv.value * wv.value * wv.value - inv.g2 * wv.value - inv.g3);
                r.expect(std::abs(res) < 1e-8, "ODE residual at " + detail::str(z));
                r.expect(detail::mixed(wp(l, -z, p), wv.value, 1e-10), "evenness");
                r.expect(detail::mixed(wp(l, z + 1.0, p), wv.value, 1e-10), "periodicity");
                r.expect(detail::mixed(wp_row_sum(l, z, p), wv.value, 1e-8), "row-sum agreement");
                const cplx alpha = std::polar(unif(g, 0.3, 3), unif(g, -3, 3));
                const FramedLattice al(alpha, alpha * tau.value());
                r.expect(detail::mixed(wp(al, alpha * z, p), wv.value / (alpha * alpha), 1e-10), "homogeneity");
            }
        }
    });
    return r.result();
}

inline SuiteResult modular_forms_suite(std::mt19937_64 g, const Precision& p) {
    using detail::unif;
    Recorder r("modular_forms");
    r.guarded("modular_forms", [&] {
        r.expect(detail::mixed(j_invariant(point_i(), p), 1728.0, 1e-6), "j(i) = 1728");
        r.expect(std::abs(j_invariant(point_rho(), p)) < 1e-6, "j(rho) = 0");
        r.expect(detail::mixed(j_invariant(HalfPlanePoint(0, 2), p), 287496.0, 1e-6), "j(2i) = 287496");
        for (int k = 0; k < 100; ++k) {
            const HalfPlanePoint tau = detail::random_reduced(g);
            const SL2Matrix a = detail::random_matrix(g, 10);
            const HalfPlanePoint moved = act(a, tau);
            if (moved.im() < 1e-6) continue;
            const cplx j0 = j_invariant(tau, p);
            r.expect(std::abs(j_invariant(moved, p) - j0) < 1e-8 * (1 + std::abs(j0)), "modular invariance");
            r.expect(std::abs(discriminant(tau, p)) > 1e-12, "discriminant nonzero");
        }
        for (int k = 0; k < 100; ++k) {
            const HalfPlanePoint a = detail::random_reduced(g), b = detail::random_reduced(g);
            if (hyp_distance(a, b) <= 1e-3 || same_orbit(a, b, p)) continue;
            r.expect(std::abs(j_invariant(a, p) - j_invariant(b, p)) > 1e-9, "j injective on F");
        }
        const FramedLattice l(1.0, cplx(0.2, 1.1));
        const cplx alpha(1.3, -0.4);
        const cplx base = eisenstein_lattice_sum_oracle(4, l, 40);
        const cplx scaled = eisenstein_lattice_sum_oracle(4, FramedLattice(alpha, alpha * l.mu()), 40);
        r.expect(std::abs(scaled - base / std::pow(alpha, 4)) < 1e-12 * std::abs(base), "oracle homogeneity");
    });
    return r.result();
}

inline SuiteResult legendre_suite(std::mt19937_64 g, const Precision& p) {
    Recorder r("legendre");
    r.guarded("legendre", [&] {
        for (int k = 0; k < 300; ++k) {
            const LegendreParameter u = detail::random_u(g);
            const cplx l0 = lambda_hat(u);
            const auto orbit = s3_orbit(u);
            r.expect(orbit.size() == 1 || orbit.size() == 2 || orbit.size() == 3 || orbit.size() == 6, "orbit size");
            for (cplx v : orbit) r.expect(detail::mixed(lambda_hat(LegendreParameter(v)), l0, 1e-10), "S3 invariance");
            const auto [g2, g3] = legendre_invariants(u);
            const cplx g23 = g2 * g2 * g2;
            r.expect(detail::mixed(1728.0 * g23 / (g23 - 27.0 * g3 * g3), 256.0 * l0, 1e-9), "j = 256 lambda_hat");
        }
        for (int k = 0; k < 10; ++k) {
            const LegendreParameter u = detail::random_u(g);
            const FramedLattice l = period_lattice(u, p);
            r.expect(std::fabs((l.mu() / l.lambda()).imag()) > 1e-6, "period lattice nondegenerate");
            r.expect(detail::mixed(j_invariant(tau_from_u(u, p), p), j_from_u(u), 1e-6), "u -> tau round trip");
        }
    });
    return r.result();
}

inline SuiteResult universal_family_suite(std::mt19937_64 g, const Precision& p) {
    using detail::unif;
    Recorder r("universal_family");
    r.guarded("universal_family", [&] {
        std::uniform_int_distribution<std::int64_t> small(-10, 10);
        auto element = [&] {
            SL2Matrix a;
            do a = detail::random_matrix(g, 8);
            while (a.max_abs_entry() > 10);
            return AffineGroupElement{small(g), small(g), a};
        };
        for (int k = 0; k < 300; ++k) {
            const auto h1 = element(), h2 = element();
            const TotalSpacePoint pt{HalfPlanePoint(unif(g, -1, 1), unif(g, 0.5, 2)), cplx(unif(g, -2, 2), unif(g, -2, 2))};
            const auto lhs = act_total(h1 * h2, pt), rhs = act_total(h1, act_total(h2, pt));
            r.expect(std::abs(lhs.z - rhs.z) < 1e-12 * (1 + std::abs(lhs.z)) &&
                         std::abs(lhs.tau.value() - rhs.tau.value()) < 1e-12 * (1 + std::abs(lhs.tau.value())),
                     "action compatibility");
            const cplx c1 = automorphy_factor(h1.mat * h2.mat, pt.tau);
            const cplx c2 = automorphy_factor(h1.mat, act(h2.mat, pt.tau)) * automorphy_factor(h2.mat, pt.tau);
            r.expect(std::abs(c1 - c2) < 1e-12 * (1 + std::abs(c1)), "automorphy cocycle");
            const auto [q, h] = canonical_rep(pt, p);
            r.expect(canonical_rep(q, p).second == AffineGroupElement::identity(), "canonical_rep idempotent");
            r.expect(std::abs(act_total(h, pt).z - q.z) < 1e-9, "canonical_rep element");
        }
        const TotalSpacePoint pt{HalfPlanePoint(0.2, 1.3), cplx(0.4, -0.1)};
        r.expect(act_total(AffineGroupElement::translation(3, -2), pt).tau.value() == pt.tau.value(), "Z^2 fixes tau");
        r.expect(std::abs(act_total(AffineGroupElement::linear(-SL2Matrix()), pt).z + pt.z) < 1e-15, "-I is z -> -z");
    });
    return r.result();
}

inline SuiteResult git_suite(std::mt19937_64 g) {
    Recorder r("git_toy");
    r.expect(semistable_locus_description(WeightAction({1, 1, 1})).empty(), "(1,1,1): empty locus");
    r.expect(semistable_locus_description(WeightAction({0, 1, 1})) == std::vector<Support>{{0}}, "(0,1,1): z0 != 0");
    r.expect(semistable_locus_description(WeightAction({-1, 1, 1})) == std::vector<Support>{{0, 1}, {0, 2}},
             "(-1,1,1): z0 != 0 and (z1,z2) != 0");
    using P = std::pair<cplx, cplx>;
    r.expect(orbit_closure_equivalent(P{1.0, 0.0}, P{0.0, 0.0}, 1e-12) &&
                 orbit_closure_equivalent(P{0.0, 1.0}, P{0.0, 0.0}, 1e-12),
             "null fibre identified");
    r.expect(!orbit_closure_equivalent(P{1.0, 1.0}, P{1.0, 2.0}, 1e-12), "distinct products separated");
    for (int n : {2, 3, 4, 6}) {
        const cplx z = std::polar(detail::unif(g, 0.5, 2), detail::unif(g, -3, 3));
        int equivalent = 0;
        for (int k = 0; k < n; ++k) equivalent += mu_n_equivalent(n, z, z * std::polar(1.0, 2 * std::numbers::pi * k / n), 1e-9);
        r.expect(equivalent == n, "mu_n orbit size");
        r.expect(!mu_n_equivalent(n, z, z * std::polar(1.0, std::numbers::pi / n), 1e-9), "mu_n off-orbit point");
    }
    return r.result();
}

inline SuiteResult cli_suite(std::mt19937_64 g) {
    Recorder r("cli");
    auto regions = [](int depth) {
        const std::string svg = tessellate(depth);
        std::size_t n = 0;
        for (auto pos = svg.find("class=\"region\""); pos != std::string::npos; pos = svg.find("class=\"region\"", pos + 1)) ++n;
        return n;
    };
    r.expect(regions(0) == 1, "tessellate depth 0 has one region");
    r.expect(regions(1) == 4, "tessellate depth 1 has four regions");
    for (int k = 0; k < 50; ++k) {
        const SL2Matrix m = detail::random_matrix(g, 12);
        r.expect(io::matrix_from_json(io::json::parse(io::to_json(m).dump())) == m, "matrix JSON round trip");
        const GeneratorWord w = decompose_word(m);
        r.expect(io::word_from_json(io::json::parse(io::to_json(w).dump())) == w, "word JSON round trip");
        const cplx z(detail::unif(g, -5, 5), detail::unif(g, -5, 5));
        r.expect(io::complex_from_json(io::json::parse(io::to_json(z).dump())) == z, "complex JSON round trip");
    }
    return r.result();
}

inline std::vector<SuiteResult> run_all(std::uint64_t seed, const Precision& p) {
    auto stream = [seed](std::uint64_t k) { return std::mt19937_64(seed * 1000003ULL + k); };
    return {modular_group_suite(stream(1)),   halfplane_suite(stream(2), p), lattice_suite(stream(3), p),
            modular_forms_suite(stream(4), p), legendre_suite(stream(5), p),  universal_family_suite(stream(6), p),
            git_suite(stream(7)),             cli_suite(stream(8))};
}

} // namespace ellmod::check
