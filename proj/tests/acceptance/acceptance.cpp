// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// usage: acceptance <path to ellmod CLI> [seed]

#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "ellmod/serialization.hpp"
#include "oracles.hpp"

using namespace ellmod;
using namespace std::complex_literals;
using io::json;

namespace {

std::uint64_t g_seed = 0;
std::string g_cli;
int g_failures = 0;

struct Outcome {
    bool pass = false;
    std::string detail;
};

void criterion(int id, const std::string& name, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < budget_s;
    if (!in_time) o.detail += "; over time budget";
    const bool ok = o.pass && in_time;
    if (!ok) ++g_failures;
    std::cout << (ok ? "PASS " : "FAIL ") << std::setw(2) << id << "  " << name << ": " << o.detail << "  ["
              << std::fixed << std::setprecision(3) << secs << " s of " << budget_s << ", seed " << g_seed << "]"
              << std::defaultfloat << std::endl;
}

std::string sci(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(2) << v;
    return os.str();
}

std::mt19937_64 stream(int id) { return oracle::rng(g_seed * 1000003ULL + 100 + id); }

HalfPlanePoint random_reduced(std::mt19937_64& g) {
    return reduce(HalfPlanePoint(oracle::uniform(g, -0.5, 0.5), oracle::uniform(g, 0.3, 2.5))).point;
}

LegendreParameter random_u(std::mt19937_64& g) {
    for (;;) {
        const cplx u(oracle::uniform(g, -5, 5), oracle::uniform(g, -5, 5));
        if (std::abs(u) > 0.2 && std::abs(u - 1.0) > 0.2 && std::abs(u) < 5) return LegendreParameter(u);
    }
}

struct Run {
    int status = -1;
    std::string out;
};

Run run_cli(const std::string& args) {
    Run r;
    FILE* pipe = popen(("'" + g_cli + "' " + args + " 2>/dev/null").c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::size_t count_regions(const std::string& svg) {
    std::size_t n = 0;
    for (auto pos = svg.find("class=\"region\""); pos != std::string::npos; pos = svg.find("class=\"region\"", pos + 1)) ++n;
    return n;
}

Outcome presentation() {
    const SL2Matrix s = generator(Generator::S), r = generator(Generator::R), minus = -SL2Matrix();
    const bool ok = power(s, 4) == SL2Matrix() && power(r, 6) == SL2Matrix() && power(s, 2) == minus &&
                    power(r, 3) == minus && verify_presentation().all();
    return {ok, ok ? "S^4 = R^6 = I, S^2 = R^3 = -I" : "relation violated"};
}

Outcome word_round_trip() {
    auto g = stream(2);
    int bad = 0;
    for (int k = 0; k < 1000; ++k) {
        const GeneratorWord w = oracle::random_word(g, 20);
        const SL2Matrix m = oracle::product_of_letters(w);
        if (evaluate_word(w) != m || evaluate_word(decompose_word(m)) != m) ++bad;
    }
    return {bad == 0, std::to_string(1000 - bad) + "/1000 exact"};
}

Outcome reduction_soundness() {
    auto g = stream(3);
    int outside = 0, disagree = 0, oracle_bad = 0, compared = 0;
    double worst = 0;
    for (int k = 0; k < 1000; ++k) {
        const HalfPlanePoint tau(oracle::uniform(g, -3, 3), std::exp(oracle::uniform(g, std::log(0.05), std::log(10.0))));
        const SL2Matrix a = oracle::random_matrix(g, 15);
        const Reduction r = reduce(tau);
        if (in_fundamental_domain(r.point, 1e-9) == DomainPosition::outside) ++outside;
        const HalfPlanePoint moved = act(a, tau);
        if (moved.im() < 1e-12) continue; // Im underflows relative to Re; not a representable orbit point
        ++compared;
        const double d = std::abs(reduce(moved).point.value() - r.point.value());
        worst = std::max(worst, d);
        if (d > 1e-9) ++disagree;
        if (k < 50 && std::abs(oracle::reduced_point_by_enumeration(tau.value()) - r.point.value()) > 1e-9) ++oracle_bad;
    }
    return {outside == 0 && disagree == 0 && oracle_bad == 0,
            std::to_string(outside) + " outside F, " + std::to_string(disagree) + "/" + std::to_string(compared) +
                " orbit disagreements (max " + sci(worst) + ", tol 1e-9), " + std::to_string(oracle_bad) +
                "/50 oracle mismatches"};
}

Outcome special_values() {
    const double ji = std::abs(j_invariant(point_i()) - 1728.0) / 1728.0;
    const double jr = std::abs(j_invariant(point_rho()));
    const cplx j2 = j_invariant(HalfPlanePoint(0, 2));
    const auto oracle_j2 = oracle::j_product_formula(2i);
    const double j2_oracle = std::abs(j2 - cplx(double(oracle_j2.real()), double(oracle_j2.imag()))) / 287496.0;
    const double j2_exact = std::abs(j2 - 287496.0) / 287496.0;
    const bool ok = ji <= 1e-6 && jr <= 1e-6 && j2_oracle <= 1e-6 && j2_exact <= 1e-6;
    return {ok, "rel j(i) " + sci(ji) + ", |j(rho)| " + sci(jr) + ", rel j(2i) vs q-product oracle " + sci(j2_oracle) +
                    " (vs 287496: " + sci(j2_exact) + "), tol 1e-6"};
}

Outcome eisenstein_dual() {
    auto g = stream(5);
    const int n = 2000;
    double worst4 = 0, worst6 = 0, worst_richardson = 0, tail_min = 1e300, tail_max = 0;
    for (int k = 0; k < 20; ++k) {
        const HalfPlanePoint tau = random_reduced(g);
        const FramedLattice l = FramedLattice::standard(tau);
        const cplx fast4 = eisenstein(4, tau), box4 = eisenstein_lattice_sum_oracle(4, l, n);
        const double e4 = std::abs(fast4 - box4);
        worst4 = std::max(worst4, e4);
        worst6 = std::max(worst6, std::abs(eisenstein(6, tau) - eisenstein_lattice_sum_oracle(6, l, n)));
        tail_min = std::min(tail_min, e4 * n * n);
        tail_max = std::max(tail_max, e4 * n * n);
        if (k < 3) {
            const cplx half = eisenstein_lattice_sum_oracle(4, l, n / 2);
            worst_richardson = std::max(worst_richardson, std::abs((4.0 * box4 - half) / 3.0 - fast4));
        }
    }
    std::cout << "     05  supplementary: k=4 box-sum error x N^2 in [" << std::setprecision(3) << tail_min << ", "
              << tail_max << "]; Richardson (4 S_2000 - S_1000)/3 vs fast path max " << sci(worst_richardson)
              << std::defaultfloat << std::endl;
    return {worst4 <= 1e-8 && worst6 <= 1e-8,
            "N=2000 max |fast - lattice sum| k=4 " + sci(worst4) + ", k=6 " + sci(worst6) + ", tol 1e-8"};
}

Outcome wp_ode() {
    auto g = stream(6);
    double worst_res = 0, worst_sum = 0, worst_roots = 0;
    for (int s = 0; s < 10; ++s) {
        const HalfPlanePoint tau = random_reduced(g);
        const FramedLattice l = FramedLattice::standard(tau);
        const auto inv = weierstrass_invariants(tau);
        for (int k = 0; k < 10; ++k) {
            cplx z;
            do z = oracle::uniform(g, 0, 1) + oracle::uniform(g, 0, 1) * tau.value();
            while (distance_to_lattice(l, z) < 0.1);
            const WpValue v = wp_with_derivative(l, z);
            worst_res = std::max(worst_res, std::abs(v.derivative * v.derivative -
                                                     (4.0 * v.value * v.value * v.value - inv.g2 * v.value - inv.g3)));
        }
        const auto hv = half_period_values(l);
        worst_sum = std::max(worst_sum, std::abs(hv[0] + hv[1] + hv[2]));
        worst_roots = std::max(worst_roots, oracle::root_set_distance(hv, oracle::cubic_roots(inv.g2, inv.g3)));
    }
    return {worst_res < 1e-8 && worst_sum <= 1e-9 && worst_roots <= 1e-8,
            "max ODE residual " + sci(worst_res) + " (tol 1e-8), |v1+v2+v3| " + sci(worst_sum) +
                " (tol 1e-9), root match " + sci(worst_roots) + " (tol 1e-8)"};
}

Outcome lambda_j_identity() {
    auto g = stream(7);
    double worst_id = 0, worst_s3 = 0;
    for (int k = 0; k < 1000; ++k) {
        const LegendreParameter u = random_u(g);
        const auto [g2, g3] = legendre_invariants(u);
        const cplx g23 = g2 * g2 * g2;
        const cplx lhs = 1728.0 * g23 / (g23 - 27.0 * g3 * g3), rhs = 256.0 * lambda_hat(u);
        worst_id = std::max(worst_id, std::abs(lhs - rhs) / (1 + std::abs(rhs)));
        const cplx l0 = lambda_hat(u);
        for (cplx v : s3_orbit(u))
            worst_s3 = std::max(worst_s3, std::abs(lambda_hat(LegendreParameter(v)) - l0) / (1 + std::abs(l0)));
    }
    return {worst_id <= 1e-9 && worst_s3 <= 1e-10,
            "mixed error j identity " + sci(worst_id) + " (tol 1e-9), S3 invariance " + sci(worst_s3) + " (tol 1e-10)"};
}

Outcome legendre_round_trip() {
    auto g = stream(8);
    double worst = 0;
    for (int k = 0; k < 100; ++k) {
        const LegendreParameter u = random_u(g);
        const cplx want = j_from_u(u);
        worst = std::max(worst, std::abs(j_invariant(tau_from_u(u)) - want) / (1 + std::abs(want)));
    }
    const double half = std::abs(j_invariant(tau_from_u(LegendreParameter(0.5))) - 1728.0) / 1729.0;
    const double hex = std::abs(j_invariant(tau_from_u(LegendreParameter(std::polar(1.0, std::numbers::pi / 3)))));
    return {worst <= 1e-6 && half <= 1e-6 && hex <= 1e-6,
            "max mixed error " + sci(worst) + ", u=1/2 " + sci(half) + ", u=e^(i pi/3) " + sci(hex) + ", tol 1e-6"};
}

Outcome stabilizer_orders() {
    auto g = stream(9);
    bool ok = stabilizer(point_i()).order == 4 && stabilizer(point_rho()).order == 6 &&
              stabilizer(HalfPlanePoint(0.5, std::sqrt(3.0) / 2)).order == 6;
    int generic = 0;
    for (int k = 0; k < 20; ++k) {
        HalfPlanePoint t = random_reduced(g);
        while (hyp_distance(t, point_i()) < 0.05 || hyp_distance(t, point_rho()) < 0.05) t = random_reduced(g);
        generic += stabilizer(t).order == 2;
    }
    const auto four = intersecting_elements(point_i(), 0);
    std::vector<SL2Matrix> doubled;
    for (const auto& e : displacements_within(point_i(), 0, 2 * certified_entry_bound(point_i(), 0))) doubled.push_back(e.element);
    std::sort(doubled.begin(), doubled.end());
    const std::vector<SL2Matrix> expected = [] {
        const SL2Matrix s = generator(Generator::S);
        std::vector<SL2Matrix> v{SL2Matrix(), s, -SL2Matrix(), -s};
        std::sort(v.begin(), v.end());
        return v;
    }();
    ok = ok && generic == 20 && four == expected && doubled == four;
    return {ok, "orders i/rho/rho+1 " + std::to_string(stabilizer(point_i()).order) + "/" +
                    std::to_string(stabilizer(point_rho()).order) + "/" +
                    std::to_string(stabilizer(HalfPlanePoint(0.5, std::sqrt(3.0) / 2)).order) + ", generic order 2 at " +
                    std::to_string(generic) + "/20, |intersecting(i,0)| = " + std::to_string(four.size()) +
                    (doubled == four ? ", stable" : ", changes") + " under bound doubling"};
}

Outcome dirichlet_and_chart() {
    auto g = stream(10);
    const HalfPlanePoint x(0, 2);
    const double r_max = 1.5;
    // brute-force element list: every matrix within 4x the certified bound
    const std::int64_t bound = 4 * certified_entry_bound(x, r_max);
    const auto all = oracle::brute_force_displacements(x.value(), 30.0, bound);
    const auto stab = stabilizer(x).elements;
    int disagree = 0, members = 0;
    for (int k = 0; k < 500; ++k) {
        const HalfPlanePoint y = oracle::sample_ball(g, x, r_max);
        const double dxy = hyp_distance(x, y);
        bool brute = true;
        for (const auto& e : all) {
            if (std::find(stab.begin(), stab.end(), e) != stab.end()) continue;
            if (!(dxy < hyp_distance(y, act(e, x)))) {
                brute = false;
                break;
            }
        }
        const bool fast = dirichlet_member(x, y);
        members += fast;
        disagree += fast != brute;
    }
    const auto chart = orbifold_chart(x);
    std::vector<SL2Matrix> others;
    for (const auto& e : nearest_translates(x, 60))
        if (!e.fixes_point && others.size() < 50) others.push_back(e.element);
    int violations = 0;
    for (int k = 0; k < 1000; ++k) {
        const HalfPlanePoint y = oracle::sample_ball(g, x, chart.radius);
        for (const auto& e : others) violations += hyp_distance(act(e, y), x) < chart.radius;
    }
    return {disagree == 0 && violations == 0 && others.size() == 50,
            std::to_string(disagree) + "/500 Dirichlet disagreements with brute force at bound " + std::to_string(bound) +
                " (" + std::to_string(members) + " members), chart radius " + sci(chart.radius) + ": " +
                std::to_string(violations) + " violations over 1000 x " + std::to_string(others.size())};
}

Outcome universal_family() {
    auto g = stream(11);
    double worst = 0;
    bool exact = true;
    for (int k = 0; k < 1000; ++k) {
        SL2Matrix a1, a2;
        do a1 = oracle::random_matrix(g, 8);
        while (a1.max_abs_entry() > 10);
        do a2 = oracle::random_matrix(g, 8);
        while (a2.max_abs_entry() > 10);
        const AffineGroupElement h1{oracle::uniform_int(g, -10, 10), oracle::uniform_int(g, -10, 10), a1};
        const AffineGroupElement h2{oracle::uniform_int(g, -10, 10), oracle::uniform_int(g, -10, 10), a2};
        const TotalSpacePoint p{HalfPlanePoint(oracle::uniform(g, -1, 1), oracle::uniform(g, 0.5, 2)),
                                cplx(oracle::uniform(g, -2, 2), oracle::uniform(g, -2, 2))};
        const auto lhs = act_total(h1 * h2, p), rhs = act_total(h1, act_total(h2, p));
        worst = std::max({worst, std::abs(lhs.z - rhs.z) / (1 + std::abs(lhs.z)),
                          std::abs(lhs.tau.value() - rhs.tau.value()) / (1 + std::abs(lhs.tau.value()))});
        const auto m = oracle::uniform_int(g, -20, 20), n = oracle::uniform_int(g, -20, 20);
        const auto t = act_total(AffineGroupElement::translation(m, n), p);
        exact = exact && t.tau.value() == p.tau.value() &&
                std::abs(t.z - (p.z + double(m) * p.tau.value() + double(n))) <= 1e-12 * (1 + std::abs(t.z));
        const auto inv = act_total(AffineGroupElement::linear(-SL2Matrix()), p);
        exact = exact && inv.z == -p.z && std::abs(inv.tau.value() - p.tau.value()) <= 1e-15;
        const auto [q, h] = canonical_rep(p);
        exact = exact && canonical_rep(q).second == AffineGroupElement::identity();
    }
    return {worst <= 1e-12 && exact, "max relative action-law error " + sci(worst) + " (tol 1e-12); translations, -I and "
                                         "canonical_rep idempotence " + (exact ? "hold" : "FAIL")};
}

Outcome git_toy() {
    const bool loci = semistable_locus_description(WeightAction({1, 1, 1})).empty() &&
                      semistable_locus_description(WeightAction({0, 1, 1})) == std::vector<Support>{{0}} &&
                      semistable_locus_description(WeightAction({-1, 1, 1})) == std::vector<Support>{{0, 1}, {0, 2}};
    using P = std::pair<cplx, cplx>;
    const bool hyper = orbit_closure_equivalent(P{1.0, 0.0}, P{0.0, 1.0}, 1e-12) &&
                       orbit_closure_equivalent(P{0.0, 1.0}, P{0.0, 0.0}, 1e-12) &&
                       orbit_closure_equivalent(P{1.0, 0.0}, P{0.0, 0.0}, 1e-12) &&
                       !orbit_closure_equivalent(P{1.0, 1.0}, P{1.0, 2.0}, 1e-12) &&
                       !orbit_closure_equivalent(P{1.0, 1.0}, P{0.0, 0.0}, 1e-12);
    auto g = stream(12);
    bool mu = true;
    for (int n : {2, 3, 4, 6}) {
        const cplx z = std::polar(oracle::uniform(g, 0.5, 2), oracle::uniform(g, -3, 3));
        // of 4n points evenly spaced on the circle through z, exactly n share its orbit
        int equivalent = 0;
        for (int k = 0; k < 4 * n; ++k) {
            const cplx w = std::polar(std::abs(z), std::arg(z) + 2 * std::numbers::pi * k / (4 * n));
            equivalent += mu_n_equivalent(n, z, w, 1e-9);
        }
        mu = mu && equivalent == n;
    }
    return {loci && hyper && mu, std::string("loci ") + (loci ? "match" : "differ") + ", hyperbola " +
                                    (hyper ? "ok" : "wrong") + ", mu_n orbit sizes " + (mu ? "n" : "wrong")};
}

Outcome cli() {
    if (g_cli.empty()) return {false, "no CLI path given"};
    const Run check = run_cli("check --seed 0");
    bool check_ok = check.status == 0;
    std::string check_detail = "check exit " + std::to_string(check.status);
    try {
        const json j = json::parse(check.out);
        check_ok = check_ok && j["failed"] == 0;
        check_detail += ", " + std::to_string(j["passed"].get<int>()) + " passed / " + std::to_string(j["failed"].get<int>()) + " failed";
    } catch (const std::exception&) {
        check_ok = false;
    }
    const Run tess = run_cli("tessellate --depth 0");
    const std::size_t regions = count_regions(tess.out);

    const std::string point = R"('{"tau":{"re":0.3,"im":1.1},"z":{"re":0.4,"im":-0.2}}')";
    const std::vector<std::pair<std::string, std::function<json(const json&)>>> commands = {
        {"reduce --tau 2.3+0.1i",
         [](const json& j) {
             return json{{"tau_reduced", io::to_json(io::halfplane_from_json(j["tau_reduced"]))},
                         {"matrix", io::to_json(io::matrix_from_json(j["matrix"]))},
                         {"word", io::to_json(io::word_from_json(j["word"]))}};
         }},
        {"j --tau 0.1+1.3i", [](const json& j) { return json{{"j", io::to_json(io::complex_from_json(j["j"]))}}; }},
        {"lambda --u 0.5",
         [](const json& j) {
             return json{{"lambda_hat", io::to_json(io::complex_from_json(j["lambda_hat"]))},
                         {"j", io::to_json(io::complex_from_json(j["j"]))}};
         }},
        {"j-from-u --u 2+i", [](const json& j) { return json{{"j", io::to_json(io::complex_from_json(j["j"]))}}; }},
        {"aut --tau i", [](const json& j) { return io::to_json(io::stabilizer_from_json(j)); }},
        {"orbit --u 2+i --word st",
         [](const json& j) {
             json orbit = json::array();
             for (const auto& v : j["orbit"]) orbit.push_back(io::to_json(io::complex_from_json(v)));
             return json{{"orbit", orbit}, {"image", io::to_json(io::complex_from_json(j["image"]))}};
         }},
        {"periods --u 0.3+0.4i",
         [](const json& j) {
             json out = io::to_json(io::lattice_from_json(j));
             out["tau_reduced"] = io::to_json(io::halfplane_from_json(j["tau_reduced"]));
             return out;
         }},
        {"tau-from-u --u 0.3+0.4i", [](const json& j) { return json{{"tau", io::to_json(io::halfplane_from_json(j["tau"]))}}; }},
        {"wp --tau 0.2+1.1i --z 0.3+0.2i",
         [](const json& j) {
             return json{{"wp", io::to_json(io::complex_from_json(j["wp"]))},
                         {"wp_prime", io::to_json(io::complex_from_json(j["wp_prime"]))},
                         {"ode_residual", j["ode_residual"].get<double>()}};
         }},
        {"chart --tau 2i", [](const json& j) { return io::to_json(io::chart_from_json(j)); }},
        {"git-ss --weights -1,1,1",
         [](const json& j) { return json{{"semistable_supports", j["semistable_supports"].get<std::vector<std::vector<std::size_t>>>()}}; }},
        {R"(univ --h '{"m":1,"n":-2,"mat":{"a":0,"b":-1,"c":1,"d":0}}' --p )" + point,
         [](const json& j) { return io::to_json(io::total_point_from_json(j)); }},
        {"univ --canonical --p " + point,
         [](const json& j) {
             return json{{"point", io::to_json(io::total_point_from_json(j["point"]))},
                         {"element", io::to_json(io::affine_from_json(j["element"]))}};
         }},
        {"tessellate --depth 2 --format json",
         [](const json& j) {
             return json{{"depth", j["depth"].get<int>()}, {"regions", j["regions"].get<std::size_t>()}, {"svg", j["svg"].get<std::string>()}};
         }},
    };
    int round_trips = 0;
    std::string broken;
    for (const auto& [args, retype] : commands) {
        const Run r = run_cli(args);
        bool ok = r.status == 0;
        try {
            const json j = json::parse(r.out);
            ok = ok && j.dump() + "\n" == r.out && retype(j) == j;
        } catch (const std::exception&) {
            ok = false;
        }
        if (ok) ++round_trips;
        else broken += " [" + args.substr(0, args.find(' ')) + "]";
    }
    const bool all_trip = round_trips == static_cast<int>(commands.size());
    return {check_ok && tess.status == 0 && regions == 1 && all_trip && check.out == run_cli("check --seed 0").out,
            check_detail + "; tessellate depth 0: " + std::to_string(regions) + " region; JSON round trips " +
                std::to_string(round_trips) + "/" + std::to_string(commands.size()) + broken};
}

} // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_cli = argv[1];
    if (argc > 2) g_seed = std::stoull(argv[2]);
    criterion(1, "presentation", 0.001, presentation);
    criterion(2, "word round trip", 1, word_round_trip);
    criterion(3, "reduction soundness", 5, reduction_soundness);
    criterion(4, "special values", 1, special_values);
    criterion(5, "Eisenstein dual evaluation", 10, eisenstein_dual);
    criterion(6, "wp ODE and half-period values", 10, wp_ode);
    criterion(7, "lambda-hat / j identity", 1, lambda_j_identity);
    criterion(8, "Legendre round trip", 30, legendre_round_trip);
    criterion(9, "stabilizer orders", 2, stabilizer_orders);
    criterion(10, "Dirichlet membership and chart disjointness", 10, dirichlet_and_chart);
    criterion(11, "universal-family action law", 1, universal_family);
    criterion(12, "GIT toy quotients", 1, git_toy);
    criterion(13, "CLI", 60, cli);
    std::cout << (g_failures == 0 ? "all criteria pass" : std::to_string(g_failures) + (g_failures == 1 ? " criterion fails" : " criteria fail")) << std::endl;
    return g_failures == 0 ? 0 : 1;
}
