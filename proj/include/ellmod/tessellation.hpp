#pragma once

/**
 * @file tessellation.hpp
 * @brief SVG rendering of the fundamental domain F and its translates A.F.
 *
 * F is bounded by the arc from rho to rho+1 on |tau| = 1 and the two
 * vertical lines up to infinity. Each translate is drawn by mapping the
 * three vertices and joining them with geodesics: vertical segments when
 * the real parts agree (or one end is at infinity), otherwise arcs of
 * circles centred on the real axis.
 */

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "halfplane.hpp"
#include "modular_group.hpp"

namespace ellmod {

struct Viewport {
    double x_min = -1.6, x_max = 1.6;
    double y_min = 0.0, y_max = 2.2;
};

struct TessellationRegion {
    SL2Matrix matrix; // PSL representative
    GeneratorWord word;
    std::string path; // SVG path data
};

/// One representative word per PSL class reachable with at most depth letters
/// from {S, T, T^-1}, in breadth-first order.
inline std::vector<std::pair<SL2Matrix, GeneratorWord>> psl_classes_up_to(int depth) {
    if (depth < 0) throw std::invalid_argument("tessellate: depth must be >= 0");
    if (depth > 14) throw std::invalid_argument("tessellate: depth above 14 not supported");
    std::vector<std::pair<SL2Matrix, GeneratorWord>> out{{SL2Matrix(), GeneratorWord{}}};
    std::map<SL2Matrix, std::size_t> seen{{SL2Matrix(), 0}};
    std::size_t begin = 0;
    for (int level = 0; level < depth; ++level) {
        const std::size_t end = out.size();
        for (std::size_t k = begin; k < end; ++k) {
            for (Letter l : {Letter::S, Letter::T, Letter::Tinv}) {
                const SL2Matrix m = psl_canonical(out[k].first * letter_matrix(l));
                if (seen.count(m)) continue;
                GeneratorWord w = out[k].second;
                w.letters.push_back(l);
                w.sign = evaluate_word(w) == m ? 1 : -1;
                seen.emplace(m, out.size());
                out.emplace_back(m, std::move(w));
            }
        }
        begin = end;
    }
    return out;
}

namespace detail {

inline cplx vertex_image(const SL2Matrix& a, cplx v) {
    const cplx num = static_cast<double>(a.a()) * v + static_cast<double>(a.b());
    const cplx den = static_cast<double>(a.c()) * v + static_cast<double>(a.d());
    return num / den;
}

// Image of infinity; nullopt when it stays at infinity.
inline std::optional<cplx> infinity_image(const SL2Matrix& a) {
    if (a.c() == 0) return std::nullopt;
    return cplx(static_cast<double>(a.a()) / static_cast<double>(a.c()), 0.0);
}

class PathBuilder {
public:
    PathBuilder(double scale, double y_top) : scale_(scale), y_top_(y_top) {}

    void move_to(cplx p) { emit('M', p); }

    // Geodesic from the current point to q.
    void geodesic_to(cplx p, cplx q) {
        if (std::fabs(p.real() - q.real()) <= 1e-12 * (1 + std::fabs(p.real()))) {
            emit('L', q);
            return;
        }
        const double x0 = (std::norm(p) - std::norm(q)) / (2 * (p.real() - q.real()));
        const double r = std::abs(p - x0) * scale_;
        const int sweep = p.real() < q.real() ? 1 : 0;
        os_ << "A " << fmt(r) << ' ' << fmt(r) << " 0 0 " << sweep << ' ';
        point(q);
    }

    // Vertical ray from p up to the clipping height, then across to q's vertical.
    void up_to_top_and_over(cplx p, cplx q) {
        emit('L', cplx(p.real(), y_top_));
        emit('L', cplx(q.real(), y_top_));
    }

    void line_to(cplx q) { emit('L', q); }
    void close() { os_ << 'Z'; }
    std::string str() const { return os_.str(); }

private:
    static std::string fmt(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", v);
        return buf;
    }
    void point(cplx p) { os_ << fmt(p.real() * scale_) << ' ' << fmt(-p.imag() * scale_) << ' '; }
    void emit(char cmd, cplx p) {
        os_ << cmd << ' ';
        point(p);
    }

    double scale_, y_top_;
    std::ostringstream os_;
};

inline std::string region_path(const SL2Matrix& a, double scale, double y_top) {
    const cplx rho = point_rho().value();
    const cplx v0 = vertex_image(a, rho);
    const cplx v1 = vertex_image(a, rho + 1.0);
    const auto vinf = infinity_image(a);
    PathBuilder pb(scale, y_top);
    pb.move_to(v0);
    pb.geodesic_to(v0, v1);
    if (vinf) {
        pb.geodesic_to(v1, *vinf);
        pb.geodesic_to(*vinf, v0);
    } else {
        pb.up_to_top_and_over(v1, v0);
        pb.line_to(v0);
    }
    pb.close();
    return pb.str();
}

inline std::string word_text(const GeneratorWord& w) {
    std::string s = w.sign < 0 ? "-" : "";
    if (w.letters.empty()) return s + "I";
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        if (i) s += ' ';
        s += letter_name(w.letters[i]);
    }
    return s;
}

} // namespace detail

inline std::vector<TessellationRegion> tessellation_regions(int depth, const Viewport& vp = {},
                                                            double scale = 200.0) {
    std::vector<TessellationRegion> out;
    for (auto& [m, w] : psl_classes_up_to(depth)) {
        out.push_back({m, w, detail::region_path(m, scale, vp.y_max)});
    }
    return out;
}

/// SVG 1.1 document; one path with class "region" per PSL class.
inline std::string tessellate(int depth, const Viewport& vp = {}, double scale = 200.0) {
    if (!(vp.x_max > vp.x_min) || !(vp.y_max > vp.y_min) || vp.y_min < 0) {
        throw std::invalid_argument("tessellate: invalid viewport");
    }
    const auto regions = tessellation_regions(depth, vp, scale);
    const double x = vp.x_min * scale, y = -vp.y_max * scale;
    const double w = (vp.x_max - vp.x_min) * scale, h = (vp.y_max - vp.y_min) * scale;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << x << ' ' << y << ' ' << w << ' '
       << h << "\" width=\"" << w << "\" height=\"" << h << "\">\n"
       << "  <defs><clipPath id=\"view\"><rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\""
       << h << "\"/></clipPath></defs>\n"
       << "  <g clip-path=\"url(#view)\" fill=\"none\" stroke=\"black\" stroke-width=\"1\">\n";
    for (std::size_t i = 0; i < regions.size(); ++i) {
        os << "    <path class=\"region\" data-word=\"" << detail::word_text(regions[i].word) << "\""
           << (i == 0 ? " fill=\"#dde6f0\"" : "") << " d=\"" << regions[i].path << "\"/>\n";
    }
    os << "    <line class=\"axis\" x1=\"" << x << "\" y1=\"0\" x2=\"" << x + w << "\" y2=\"0\" stroke=\"gray\"/>\n"
       << "  </g>\n</svg>\n";
    return os.str();
}

} // namespace ellmod
