// ellmod: command-line front end. JSON on stdout, diagnostics on stderr.
// Exit status: 0 ok, 1 failed check or uncertified numerics, 2 usage error.

#include <cctype>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "check_suite.hpp"
#include "ellmod/ellmod.hpp"
#include "ellmod/serialization.hpp"

using namespace ellmod;
using io::json;

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Options {
    Precision prec;
    std::uint64_t seed = 0;
    std::string out;
    int depth = 2;
    std::string format;

    std::string tau, u, z, lattice, word, weights, h, p;
    bool canonical = false;
};

HalfPlanePoint parse_tau(const std::string& s) {
    if (s.empty()) throw UsageError("--tau is required");
    return HalfPlanePoint(io::parse_complex(s));
}

LegendreParameter parse_u(const std::string& s) {
    if (s.empty()) throw UsageError("--u is required");
    return LegendreParameter(io::parse_complex(s));
}

json parse_json_arg(const std::string& s, const char* flag) {
    if (s.empty()) throw UsageError(std::string(flag) + " is required");
    try {
        return json::parse(s);
    } catch (const json::exception& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
}

std::vector<std::int64_t> parse_weights(const std::string& s) {
    std::vector<std::int64_t> w;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t end = std::min(s.find(',', start), s.size());
        const std::string item = s.substr(start, end - start);
        std::size_t used = 0;
        try {
            w.push_back(std::stoll(item, &used));
        } catch (const std::exception&) {
            used = 0;
        }
        if (item.empty() || used != item.size()) throw UsageError("--weights: cannot parse '" + item + "'");
        start = end + 1;
    }
    return w;
}

json support_list(const std::vector<Support>& supports) {
    json out = json::array();
    for (const auto& s : supports) out.push_back(json(std::vector<std::size_t>(s.begin(), s.end())));
    return out;
}

json run_json_command(const std::string& cmd, const Options& o, int& status) {
    const Precision& prec = o.prec;
    if (cmd == "reduce") {
        const Reduction r = reduce(parse_tau(o.tau), prec);
        return {{"tau_reduced", io::to_json(r.point)}, {"matrix", io::to_json(r.matrix)},
                {"word", io::to_json(decompose_word(r.matrix))}};
    }
    if (cmd == "j") return {{"j", io::to_json(j_invariant(parse_tau(o.tau), prec))}};
    if (cmd == "lambda") {
        const LegendreParameter u = parse_u(o.u);
        return {{"lambda_hat", io::to_json(lambda_hat(u))}, {"j", io::to_json(j_from_u(u))}};
    }
    if (cmd == "j-from-u") return {{"j", io::to_json(j_from_u(parse_u(o.u)))}};
    if (cmd == "aut") return io::to_json(stabilizer(parse_tau(o.tau), prec));
    if (cmd == "orbit") {
        const LegendreParameter u = parse_u(o.u);
        json orbit = json::array();
        for (cplx v : s3_orbit(u, prec.tol)) orbit.push_back(io::to_json(v));
        json out{{"orbit", orbit}};
        if (!o.word.empty()) out["image"] = io::to_json(s3_act(parse_s3_word(o.word), u, prec.tol).value());
        return out;
    }
    if (cmd == "periods") {
        const LegendreParameter u = parse_u(o.u);
        const FramedLattice l = period_lattice(u, prec);
        json out = io::to_json(l);
        out["tau_reduced"] = io::to_json(reduce(tau_of(l), prec).point);
        return out;
    }
    if (cmd == "tau-from-u") return {{"tau", io::to_json(tau_from_u(parse_u(o.u), prec))}};
    if (cmd == "wp") {
        if (o.tau.empty() == o.lattice.empty()) throw UsageError("wp: give exactly one of --tau, --lattice");
        const FramedLattice l = o.lattice.empty() ? FramedLattice::standard(parse_tau(o.tau))
                                                  : io::lattice_from_json(parse_json_arg(o.lattice, "--lattice"));
        if (o.z.empty()) throw UsageError("--z is required");
        const cplx z = io::parse_complex(o.z);
        const WpValue v = wp_with_derivative(l, z, prec);
        const auto inv = weierstrass_invariants(l, prec);
        const cplx residual = v.derivative * v.derivative - (4.0 * v.value * v.value * v.value - inv.g2 * v.value - inv.g3);
        return {{"wp", io::to_json(v.value)}, {"wp_prime", io::to_json(v.derivative)}, {"ode_residual", std::abs(residual)}};
    }
    if (cmd == "chart") return io::to_json(orbifold_chart(parse_tau(o.tau), prec));
    if (cmd == "git-ss") {
        if (o.weights.empty()) throw UsageError("--weights is required");
        return {{"semistable_supports", support_list(semistable_locus_description(WeightAction(parse_weights(o.weights))))}};
    }
    if (cmd == "univ") {
        const TotalSpacePoint pt = io::total_point_from_json(parse_json_arg(o.p, "--p"));
        if (o.canonical) {
            if (!o.h.empty()) throw UsageError("univ: --canonical takes no --h");
            const auto [q, h] = canonical_rep(pt, prec);
            return {{"point", io::to_json(q)}, {"element", io::to_json(h)}};
        }
        return io::to_json(act_total(io::affine_from_json(parse_json_arg(o.h, "--h")), pt));
    }
    if (cmd == "check") {
        const auto t0 = std::chrono::steady_clock::now();
        json suites = json::array();
        int passed = 0, failed = 0;
        for (const auto& s : check::run_all(o.seed, prec)) {
            suites.push_back({{"name", s.name}, {"passed", s.passed}, {"failed", s.failed}, {"failures", s.failures}});
            passed += s.passed;
            failed += s.failed;
        }
        std::cerr << "ellmod check: " << passed << " passed, " << failed << " failed in "
                  << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
        status = failed == 0 ? 0 : 1;
        return {{"seed", o.seed}, {"suites", suites}, {"passed", passed}, {"failed", failed}};
    }
    throw UsageError("unknown command '" + cmd + "'");
}

void emit(const std::string& text, const Options& o) {
    if (o.out.empty()) {
        std::cout << text << '\n';
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw UsageError("cannot open '" + o.out + "' for writing");
    f << text << '\n';
}

int run(const std::string& cmd, Options& o) {
    o.prec.validate();
    if (cmd == "tessellate") {
        if (o.depth < 0) throw UsageError("--depth must be >= 0");
        const std::string svg = tessellate(o.depth);
        if (o.format == "json" || !o.out.empty()) {
            json summary{{"depth", o.depth}, {"regions", tessellation_regions(o.depth).size()}};
            if (!o.out.empty()) {
                emit(svg, o);
                summary["out"] = o.out;
            } else {
                summary["svg"] = svg;
            }
            std::cout << summary.dump() << '\n';
        } else {
            std::cout << svg;
        }
        return 0;
    }
    if (o.format == "svg") throw UsageError("--format svg applies to tessellate only");
    int status = 0;
    emit(run_json_command(cmd, o, status).dump(), o);
    return status;
}

int fail(int code, const std::string& msg) {
    std::cout << json{{"error", msg}}.dump() << '\n';
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Moduli of elliptic curves: modular group, special functions, Legendre periods", "ellmod"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--eps", o.prec.eps, "series and quadrature accuracy")->capture_default_str();
    app.add_option("--max-terms", o.prec.max_terms, "q-series term cap")->capture_default_str();
    app.add_option("--enum-bound", o.prec.enum_bound, "matrix entry cap during enumeration")->capture_default_str();
    app.add_option("--seed", o.seed, "seed for check")->capture_default_str();
    app.add_option("--out", o.out, "write output to a file");
    app.add_option("--depth", o.depth, "tessellation word length")->capture_default_str();
    app.add_option("--format", o.format, "json or svg")->check(CLI::IsMember({"json", "svg"}));

    auto tau = [&](CLI::App* c) { c->add_option("--tau", o.tau, "point of the upper half-plane")->required(); };
    auto u = [&](CLI::App* c) { c->add_option("--u", o.u, "Legendre parameter")->required(); };

    tau(app.add_subcommand("reduce", "reduce tau into the fundamental domain"));
    tau(app.add_subcommand("j", "j-invariant"));
    u(app.add_subcommand("lambda", "lambda-hat and j of the Legendre curve"));
    u(app.add_subcommand("j-from-u", "j of the Legendre curve"));
    tau(app.add_subcommand("aut", "stabilizer of tau"));
    auto* orbit = app.add_subcommand("orbit", "S3 orbit of u");
    u(orbit);
    orbit->add_option("--word", o.word, "S3 word such as 'st' or 'sigma,tau'");
    u(app.add_subcommand("periods", "period lattice of the Legendre curve"));
    u(app.add_subcommand("tau-from-u", "reduced period ratio"));
    auto* wpc = app.add_subcommand("wp", "Weierstrass p and p'");
    wpc->add_option("--tau", o.tau, "lattice Z + tau Z");
    wpc->add_option("--lattice", o.lattice, R"(lattice JSON {"lambda":..,"mu":..})");
    wpc->add_option("--z", o.z, "argument")->required();
    tau(app.add_subcommand("chart", "orbifold chart at tau"));
    app.add_subcommand("git-ss", "semistable locus of a diagonal C* action")
        ->add_option("--weights", o.weights, "comma-separated integer weights")
        ->required();
    auto* univ = app.add_subcommand("univ", "action on the universal family");
    univ->set_help_flag("--help", "print this help and exit"); // frees -h for the group element
    univ->add_option("--h", o.h, "group element JSON");
    univ->add_option("--p", o.p, "total-space point JSON")->required();
    univ->add_flag("--canonical", o.canonical, "canonical representative of p instead");
    app.add_subcommand("tessellate", "SVG of the translates of the fundamental domain");
    app.add_subcommand("check", "run the invariant suite");

    // values such as -1,1,1 or -0.5+0.8i are arguments, not flags
    std::vector<std::string> args;
    for (int k = argc - 1; k >= 1; --k) args.emplace_back(argv[k]);
    for (std::size_t k = 0; k + 1 < args.size(); ++k) {
        const std::string& v = args[k];
        if (v.size() > 1 && v[0] == '-' && (std::isdigit(static_cast<unsigned char>(v[1])) || v[1] == '.' || v[1] == 'i')) {
            const std::string& flag = args[k + 1];
            if (flag.rfind("--", 0) == 0 && flag.find('=') == std::string::npos) {
                args[k + 1] = flag + "=" + v;
                args.erase(args.begin() + static_cast<std::ptrdiff_t>(k));
            }
        }
    }

    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(2, e.what());
    }

    try {
        return run(app.get_subcommands().front()->get_name(), o);
    } catch (const numeric_error& e) {
        return fail(1, e.what());
    } catch (const std::overflow_error& e) {
        return fail(1, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(2, e.what());
    } catch (const std::domain_error& e) {
        return fail(2, e.what());
    } catch (const std::out_of_range& e) {
        return fail(2, e.what());
    } catch (const std::exception& e) {
        return fail(1, e.what());
    }
}
