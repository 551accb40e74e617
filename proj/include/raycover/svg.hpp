#pragma once

// Deterministic SVG rendering of embeddings, cover instances, and witnesses.
// Figure-style output: everything is drawn from the exact data, converted to
// floating point only here.  Heights follow a signed log scale so factorial
// y-coordinates stay legible; <title> tooltips carry the true coordinates.

#include "raycover/cover_solver.hpp"
#include "raycover/io.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace raycover {
namespace svg {

inline double scale_y(double y) {
    return y >= 0 ? std::log10(1.0 + y) : -std::log10(1.0 - y);
}

inline std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::string(buf);
}

struct Canvas {
    double min_x = 0, max_x = 1, min_y = 0, max_y = 1;
    double width = 840, height = 600, pad = 40;

    void include(const ExactPoint& p) {
        const double x = p.x.to_double();
        const double y = scale_y(p.y.to_double());
        if (first) {
            min_x = max_x = x;
            min_y = max_y = y;
            first = false;
        } else {
            min_x = std::min(min_x, x);
            max_x = std::max(max_x, x);
            min_y = std::min(min_y, y);
            max_y = std::max(max_y, y);
        }
    }

    double px(double x) const {
        const double span = max_x > min_x ? max_x - min_x : 1.0;
        return pad + (x - min_x) / span * (width - 2 * pad);
    }
    double py(double y) const {
        const double span = max_y > min_y ? max_y - min_y : 1.0;
        return height - pad - (y - min_y) / span * (height - 2 * pad);
    }
    std::string at(const ExactPoint& p) const {
        return num(px(p.x.to_double())) + "," + num(py(scale_y(p.y.to_double())));
    }

    bool first = true;
};

inline std::string line_element(const Canvas& c, const ExactPoint& a, const ExactPoint& b,
                                const std::string& stroke, const std::string& extra,
                                const std::string& tooltip) {
    const double x1 = c.px(a.x.to_double()), y1 = c.py(scale_y(a.y.to_double()));
    const double x2 = c.px(b.x.to_double()), y2 = c.py(scale_y(b.y.to_double()));
    std::string out = "  <line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) +
                      "\" y2=\"" + num(y2) + "\" stroke=\"" + stroke + "\"" + extra + ">";
    out += "<title>" + tooltip + "</title></line>\n";
    return out;
}

inline std::string marker(const Canvas& c, const ExactPoint& p, const std::string& fill,
                          const std::string& tooltip) {
    return "  <circle cx=\"" + num(c.px(p.x.to_double())) + "\" cy=\"" +
           num(c.py(scale_y(p.y.to_double()))) + "\" r=\"3\" fill=\"" + fill + "\"><title>" +
           tooltip + "</title></circle>\n";
}

inline std::string document(const Canvas& c, const std::string& body) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + num(c.width) + " " +
           num(c.height) + "\">\n" + body + "</svg>\n";
}

}  // namespace svg

/// Embedding figure: the factorial curve, the rays with their complements,
/// and a marker on every ray-ray intersection.
inline std::string render_embedding_svg(const RayEmbedding& e) {
    svg::Canvas canvas;
    if (e.chord_count() == 0) return svg::document(canvas, "");
    const int m = e.point_count();
    for (int k = 1; k <= m; ++k) canvas.include(factorial_point(k));
    std::vector<ExactPoint> tips;
    for (const Ray& r : e.rays) {
        // Extend each ray to x = m + 1 for display.
        const Rational t = (Rational(m + 1) - r.origin.x) / r.dir.dx;
        tips.push_back(detail::line_point(r.origin, r.dir, t));
        canvas.include(tips.back());
    }

    std::string body = "  <g id=\"curve\" stroke-linecap=\"round\">\n";
    for (int k = 1; k + 1 <= m; ++k)
        body += svg::line_element(canvas, factorial_point(k), factorial_point(k + 1), "#bbbbbb",
                                  " stroke-dasharray=\"4 3\"",
                                  "curve chord " + std::to_string(k) + "-" + std::to_string(k + 1));
    body += "  </g>\n  <g id=\"rays\">\n";
    for (int i = 0; i < e.chord_count(); ++i) {
        const Ray& r = e.rays[i];
        body += svg::line_element(canvas, r.origin, tips[i], "#1f77b4", " stroke-width=\"1.5\"",
                                  "ray " + std::to_string(i + 1) + " origin=" + r.origin.str() +
                                      " dir=(" + r.dir.dx.str() + ", " + r.dir.dy.str() + ")");
        body += svg::marker(canvas, r.origin, "#1f77b4",
                            "origin " + std::to_string(i + 1) + " " + r.origin.str());
    }
    body += "  </g>\n  <g id=\"intersections\">\n";
    for (int i = 0; i < e.chord_count(); ++i)
        for (int j = i + 1; j < e.chord_count(); ++j) {
            const auto hit = ray_intersect(e.rays[i], e.rays[j]);
            if (hit.kind == Intersection::Kind::Point)
                body += svg::marker(canvas, *hit.point, "#d62728",
                                    "rays " + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                        " at " + hit.point->str());
        }
    body += "  </g>\n";
    return svg::document(canvas, body);
}

/// Cover-instance figure with an optional witness polyline overlay.
inline std::string render_cover_svg(const CoverInstance& ci, const CoverWitness* witness = nullptr) {
    svg::Canvas canvas;
    for (const LabeledSegment& ls : ci.segments) {
        canvas.include(ls.seg.p);
        canvas.include(ls.seg.q);
    }
    if (witness)
        for (const ExactPoint& v : witness->polyline.vertices) canvas.include(v);

    std::string body = "  <g id=\"segments\">\n";
    for (const LabeledSegment& ls : ci.segments) {
        const bool leading = ls.label[0] == 's';
        body += svg::line_element(canvas, ls.seg.p, ls.seg.q, leading ? "#2ca02c" : "#000000",
                                  " stroke-width=\"1.5\"",
                                  ls.label + " " + ls.seg.p.str() + " " + ls.seg.q.str());
    }
    body += "  </g>\n";
    if (witness) {
        body += "  <g id=\"witness\" fill=\"none\">\n  <polyline points=\"";
        for (std::size_t i = 0; i < witness->polyline.vertices.size(); ++i) {
            if (i) body += ' ';
            body += canvas.at(witness->polyline.vertices[i]);
        }
        body += "\" stroke=\"#ff7f0e\" stroke-width=\"1\" fill=\"none\"/>\n";
        for (std::size_t i = 0; i < witness->polyline.vertices.size(); ++i)
            body += svg::marker(canvas, witness->polyline.vertices[i], "#ff7f0e",
                                "bend " + std::to_string(i) + " " +
                                    witness->polyline.vertices[i].str());
        // Per-link labels at the link midpoints, tagged with the covered segment.
        std::map<int, std::string> covers;
        for (const auto& [label, link] : witness->assignment) covers[link] = label;
        for (int i = 0; i < witness->polyline.link_count(); ++i) {
            const ExactPoint& a = witness->polyline.vertices[i];
            const ExactPoint& b = witness->polyline.vertices[i + 1];
            const ExactPoint mid{(a.x + b.x) / Rational(2), (a.y + b.y) / Rational(2)};
            std::string text = "L" + std::to_string(i + 1);
            if (covers.count(i + 1)) text += ":" + covers[i + 1];
            body += "  <text x=\"" + svg::num(canvas.px(mid.x.to_double())) + "\" y=\"" +
                    svg::num(canvas.py(svg::scale_y(mid.y.to_double()))) +
                    "\" font-size=\"9\" fill=\"#ff7f0e\">" + text + "</text>\n";
        }
        body += "  </g>\n";
    }
    return svg::document(canvas, body);
}

}  // namespace raycover
