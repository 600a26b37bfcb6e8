#pragma once

/**
 * @file serialization.hpp
 * @brief JSON encodings used by the command-line tool.
 *
 * complex       {"re": x, "im": y}
 * matrix        {"a":, "b":, "c":, "d":}
 * word          {"letters": ["S","T","Tinv",...], "sign": +-1}
 * lattice       {"lambda": complex, "mu": complex}
 * affine        {"m":, "n":, "mat": matrix}
 * total point   {"tau": complex, "z": complex}
 *
 * Needs nlohmann/json; the core headers do not.
 */

#include <cctype>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "halfplane.hpp"
#include "lattice_torus.hpp"
#include "modular_group.hpp"
#include "universal_family.hpp"

namespace ellmod::io {

using json = nlohmann::ordered_json;

inline json to_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }
inline json to_json(const HalfPlanePoint& p) { return to_json(p.value()); }

inline json to_json(const SL2Matrix& m) { return {{"a", m.a()}, {"b", m.b()}, {"c", m.c()}, {"d", m.d()}}; }

inline json to_json(const GeneratorWord& w) {
    json letters = json::array();
    for (Letter l : w.letters) letters.push_back(std::string(letter_name(l)));
    return {{"letters", letters}, {"sign", w.sign}};
}

inline json to_json(const FramedLattice& l) { return {{"lambda", to_json(l.lambda())}, {"mu", to_json(l.mu())}}; }

inline json to_json(const ProjectivePoint& p) { return json::array({to_json(p[0]), to_json(p[1]), to_json(p[2])}); }

inline json to_json(const StabilizerDescriptor& s) {
    json elems = json::array();
    for (const auto& e : s.elements) elems.push_back(to_json(e));
    return {{"order", s.order}, {"generator", to_json(s.generator)}, {"elements", elems}};
}

inline json to_json(const OrbifoldChart& c) {
    return {{"center", to_json(c.center)}, {"radius", c.radius}, {"isotropy", to_json(c.isotropy)}};
}

inline json to_json(const AffineGroupElement& h) { return {{"m", h.m}, {"n", h.n}, {"mat", to_json(h.mat)}}; }

inline json to_json(const TotalSpacePoint& p) { return {{"tau", to_json(p.tau)}, {"z", to_json(p.z)}}; }

inline cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_object() || !j.contains("re") || !j.contains("im")) {
        throw std::invalid_argument("complex: expected {\"re\":..., \"im\":...}");
    }
    return {j.at("re").get<double>(), j.at("im").get<double>()};
}

inline HalfPlanePoint halfplane_from_json(const json& j) { return HalfPlanePoint(complex_from_json(j)); }

inline SL2Matrix matrix_from_json(const json& j) {
    return SL2Matrix(j.at("a").get<std::int64_t>(), j.at("b").get<std::int64_t>(), j.at("c").get<std::int64_t>(),
                     j.at("d").get<std::int64_t>());
}

inline GeneratorWord word_from_json(const json& j) {
    GeneratorWord w;
    for (const auto& l : j.at("letters")) w.letters.push_back(parse_letter(l.get<std::string>()));
    w.sign = j.at("sign").get<int>();
    if (w.sign != 1 && w.sign != -1) throw std::invalid_argument("word: sign must be +1 or -1");
    return w;
}

inline FramedLattice lattice_from_json(const json& j) {
    return FramedLattice(complex_from_json(j.at("lambda")), complex_from_json(j.at("mu")));
}

inline ProjectivePoint projective_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) throw std::invalid_argument("projective point: expected 3 coordinates");
    return {complex_from_json(j[0]), complex_from_json(j[1]), complex_from_json(j[2])};
}

inline StabilizerDescriptor stabilizer_from_json(const json& j) {
    StabilizerDescriptor s;
    s.order = j.at("order").get<int>();
    s.generator = matrix_from_json(j.at("generator"));
    for (const auto& e : j.at("elements")) s.elements.push_back(matrix_from_json(e));
    return s;
}

inline OrbifoldChart chart_from_json(const json& j) {
    return {halfplane_from_json(j.at("center")), j.at("radius").get<double>(), stabilizer_from_json(j.at("isotropy"))};
}

inline AffineGroupElement affine_from_json(const json& j) {
    return {j.at("m").get<std::int64_t>(), j.at("n").get<std::int64_t>(), matrix_from_json(j.at("mat"))};
}

inline TotalSpacePoint total_point_from_json(const json& j) {
    return {halfplane_from_json(j.at("tau")), complex_from_json(j.at("z"))};
}

namespace detail {

inline double parse_real(std::string_view s, std::string_view whole) {
    const std::string str(s);
    char* end = nullptr;
    const double v = std::strtod(str.c_str(), &end);
    if (str.empty() || end != str.c_str() + str.size()) {
        throw std::invalid_argument("complex literal: cannot parse '" + std::string(whole) + "'");
    }
    return v;
}

} // namespace detail

/// Accepts "a+bi", "a-bi", "bi", "i", "-i", "a" (j is accepted for i) and
/// the JSON object form.
inline cplx parse_complex(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("complex literal: empty");
    if (s.front() == '{') {
        try {
            return complex_from_json(json::parse(s));
        } catch (const json::exception& e) {
            throw std::invalid_argument(std::string("complex literal: ") + e.what());
        }
    }
    const char last = s.back();
    if (last != 'i' && last != 'j') return {detail::parse_real(s, text), 0.0};
    s.pop_back();
    // split at the last sign that is not a leading sign or an exponent sign
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    const std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
    std::string im_part = split == std::string::npos ? s : s.substr(split);
    if (im_part.empty() || im_part == "+") im_part = "1";
    if (im_part == "-") im_part = "-1";
    const double re = re_part.empty() ? 0.0 : detail::parse_real(re_part, text);
    return {re, detail::parse_real(im_part, text)};
}

} // namespace ellmod::io
