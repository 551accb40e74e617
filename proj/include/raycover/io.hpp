#pragma once

// Text formats for every pipeline artifact.  All numbers use the exact
// rational syntax "num/den" (plain "num" for integers); points are
// "(x, y)".  serialize -> parse is the identity on every format.

#include "raycover/curve_simplify.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace raycover {

namespace io {

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

inline std::string trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return std::string(s);
}

/// Parses "(x, y)" starting at `pos`; advances `pos` past the closing paren.
inline ExactPoint parse_point_at(const std::string& text, std::size_t& pos) {
    const auto open = text.find('(', pos);
    const auto comma = text.find(',', open);
    const auto close = text.find(')', comma);
    if (open == std::string::npos || comma == std::string::npos || close == std::string::npos)
        throw std::invalid_argument("parse_point: expected \"(x, y)\" in: " + text);
    ExactPoint p{Rational::parse(trim(text.substr(open + 1, comma - open - 1))),
                 Rational::parse(trim(text.substr(comma + 1, close - comma - 1)))};
    pos = close + 1;
    return p;
}

inline ExactPoint parse_point(const std::string& text) {
    std::size_t pos = 0;
    return parse_point_at(text, pos);
}

}  // namespace io

// ---- chord diagrams --------------------------------------------------------

inline std::string diagram_to_string(const ChordDiagram& d) {
    std::string out;
    for (std::size_t i = 0; i < d.endpoint_order.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(d.endpoint_order[i]);
    }
    out += '\n';
    return out;
}

inline ChordDiagram parse_diagram(const std::string& text) {
    std::istringstream in(text);
    std::vector<int> order;
    int v;
    while (in >> v) order.push_back(v);
    return ChordDiagram(std::move(order));
}

// ---- graphs ----------------------------------------------------------------

inline std::string graph_to_string(const Graph& g) {
    std::string out = "vertices " + std::to_string(g.vertex_count) + "\n";
    for (const auto& [u, v] : g.edges) out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

inline Graph parse_graph(const std::string& text) {
    const auto lines = io::split_lines(text);
    if (lines.empty()) throw std::invalid_argument("parse_graph: empty input");
    std::istringstream head(lines[0]);
    std::string tag;
    int n = -1;
    head >> tag >> n;
    if (tag != "vertices" || n < 0)
        throw std::invalid_argument("parse_graph: expected \"vertices <n>\"");
    Graph g(n);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (io::trim(lines[i]).empty()) continue;
        std::istringstream row(lines[i]);
        int u, v;
        if (!(row >> u >> v)) throw std::invalid_argument("parse_graph: bad edge line");
        g.add_edge(u, v);
    }
    return g;
}

// ---- embeddings ------------------------------------------------------------

inline std::string embedding_to_string(const RayEmbedding& e) {
    std::string out;
    for (int i = 0; i < e.chord_count(); ++i) {
        const Ray& r = e.rays[i];
        out += std::to_string(i + 1) + ": origin=" + r.origin.str() + " dir=(" + r.dir.dx.str() +
               ", " + r.dir.dy.str() + ")\n";
    }
    return out;
}

/// Rebuilds an embedding from its ray list.  Curve positions are recovered
/// from the grounded form: origin (a, a!) and direction (b-a, b!-a!).
inline RayEmbedding parse_embedding(const std::string& text) {
    RayEmbedding e;
    for (const std::string& raw : io::split_lines(text)) {
        const std::string line = io::trim(raw);
        if (line.empty()) continue;
        const auto colon = line.find(':');
        const auto origin_tag = line.find("origin=");
        const auto dir_tag = line.find("dir=");
        if (colon == std::string::npos || origin_tag == std::string::npos ||
            dir_tag == std::string::npos)
            throw std::invalid_argument("parse_embedding: bad line: " + line);
        const int label = std::stoi(line.substr(0, colon));
        std::size_t pos = origin_tag;
        const ExactPoint origin = io::parse_point_at(line, pos);
        pos = dir_tag;
        const ExactPoint dir_pt = io::parse_point_at(line, pos);
        if (label != static_cast<int>(e.rays.size()) + 1)
            throw std::invalid_argument("parse_embedding: labels must be 1..n in order");
        e.rays.push_back(Ray(origin, Direction{dir_pt.x, dir_pt.y}));
    }
    for (int i = 0; i < e.chord_count(); ++i) {
        const Ray& r = e.rays[i];
        if (!r.origin.x.is_integer() || !r.dir.dx.is_integer())
            throw std::invalid_argument("parse_embedding: ray is not grounded");
        const int a = static_cast<int>(r.origin.x.num());
        const int b = a + static_cast<int>(r.dir.dx.num());
        if (a < 1 || b <= a || r.origin.y != Rational(big_factorial(a)) ||
            r.dir.dy != Rational(big_factorial(b)) - Rational(big_factorial(a)))
            throw std::invalid_argument("parse_embedding: ray is not grounded on the curve");
        e.positions[i + 1] = {a, b};
    }
    return e;
}

// ---- cover instances -------------------------------------------------------

inline std::string cover_to_string(const CoverInstance& ci) {
    std::string out = "k=" + std::to_string(ci.k) + "\n";
    for (const LabeledSegment& ls : ci.segments)
        out += ls.label + " " + ls.seg.p.str() + " " + ls.seg.q.str() + "\n";
    if (ci.has_metadata()) {
        out += "# meta points " + std::to_string(ci.point_count) + "\n";
        out += "# meta ymin " + ci.y_min.str() + "\n";
        out += "# meta eps " + ci.epsilon.str() + "\n";
        for (const NeedleInfo& nd : ci.needles)
            out += "# meta needle " + std::to_string(nd.chord) + " " + std::to_string(nd.a) + " " +
                   std::to_string(nd.b) + "\n";
    }
    return out;
}

inline CoverInstance parse_cover(const std::string& text) {
    CoverInstance ci;
    bool have_k = false;
    for (const std::string& raw : io::split_lines(text)) {
        const std::string line = io::trim(raw);
        if (line.empty()) continue;
        if (line.rfind("# meta ", 0) == 0) {
            std::istringstream meta(line.substr(7));
            std::string key;
            meta >> key;
            if (key == "points") meta >> ci.point_count;
            if (key == "ymin") {
                std::string v;
                meta >> v;
                ci.y_min = Rational::parse(v);
                ci.y_low = ci.y_min - Rational(1);
            }
            if (key == "eps") {
                std::string v;
                meta >> v;
                ci.epsilon = Rational::parse(v);
            }
            if (key == "needle") {
                NeedleInfo nd;
                meta >> nd.chord >> nd.a >> nd.b;
                ci.needles.push_back(nd);
            }
            continue;
        }
        if (line[0] == '#') continue;
        if (line.rfind("k=", 0) == 0) {
            ci.k = std::stoi(line.substr(2));
            have_k = true;
            continue;
        }
        const auto space = line.find(' ');
        if (space == std::string::npos)
            throw std::invalid_argument("parse_cover: bad segment line: " + line);
        std::size_t pos = space;
        const ExactPoint p = io::parse_point_at(line, pos);
        const ExactPoint q = io::parse_point_at(line, pos);
        ci.segments.push_back({line.substr(0, space), Segment(p, q)});
    }
    if (!have_k) throw std::invalid_argument("parse_cover: missing k= header");
    // Reattach metadata indices from the label conventions.
    for (NeedleInfo& nd : ci.needles) {
        nd.origin = factorial_point(nd.a);
        nd.left_index = nd.right_index = -1;
        for (int i = 0; i < static_cast<int>(ci.segments.size()); ++i) {
            if (ci.segments[i].label == "n" + std::to_string(nd.chord) + "l") nd.left_index = i;
            if (ci.segments[i].label == "n" + std::to_string(nd.chord) + "r") nd.right_index = i;
        }
        if (nd.left_index < 0 || nd.right_index < 0)
            throw std::invalid_argument("parse_cover: needle segments missing");
        nd.apex = ci.segments[nd.left_index].seg.p;
        if (nd.apex.y != ci.y_low)
            throw std::invalid_argument("parse_cover: apex level disagrees with metadata");
        if (orientation(nd.origin, factorial_point(nd.b), nd.apex) != 0)
            throw std::invalid_argument("parse_cover: apex off the ray's supporting line");
    }
    if (ci.has_metadata()) {
        ci.lead_h = ci.lead_v = ci.lead_t = -1;
        for (int i = 0; i < static_cast<int>(ci.segments.size()); ++i) {
            if (ci.segments[i].label == "s_h") ci.lead_h = i;
            if (ci.segments[i].label == "s_v") ci.lead_v = i;
            if (ci.segments[i].label == "s_t") ci.lead_t = i;
        }
        if (ci.lead_h < 0 || ci.lead_v < 0 || ci.lead_t < 0)
            throw std::invalid_argument("parse_cover: leading segments missing");
    }
    return ci;
}

// ---- polylines, simplification instances, witnesses ------------------------

inline std::string polyline_to_string(const Polyline& p) {
    std::string out;
    for (const ExactPoint& v : p.vertices) out += v.str() + "\n";
    return out;
}

inline Polyline parse_polyline(const std::string& text) {
    std::vector<ExactPoint> vs;
    for (const std::string& raw : io::split_lines(text)) {
        const std::string line = io::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        vs.push_back(io::parse_point(line));
    }
    return Polyline(std::move(vs));
}

inline std::string simplification_to_string(const SimplificationInstance& si) {
    std::string out = "k=" + std::to_string(si.k) + " delta=" + si.delta.str() + "\n";
    out += polyline_to_string(si.input);
    return out;
}

inline SimplificationInstance parse_simplification(const std::string& text) {
    const auto lines = io::split_lines(text);
    if (lines.empty()) throw std::invalid_argument("parse_simplification: empty input");
    std::istringstream head(lines[0]);
    std::string ktok, dtok;
    head >> ktok >> dtok;
    if (ktok.rfind("k=", 0) != 0 || dtok.rfind("delta=", 0) != 0)
        throw std::invalid_argument("parse_simplification: expected \"k=<int> delta=<rat>\"");
    std::vector<ExactPoint> vs;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string line = io::trim(lines[i]);
        if (line.empty() || line[0] == '#') continue;
        vs.push_back(io::parse_point(line));
    }
    return SimplificationInstance{Polyline(std::move(vs)), std::stoi(ktok.substr(2)),
                                  Rational::parse(dtok.substr(6))};
}

inline std::string witness_to_string(const CoverWitness& w) {
    std::string out = "links " + std::to_string(w.polyline.link_count()) + "\n";
    out += polyline_to_string(w.polyline);
    for (const auto& [label, link] : w.assignment)
        out += "assign " + label + " " + std::to_string(link) + "\n";
    return out;
}

inline CoverWitness parse_witness(const std::string& text) {
    const auto lines = io::split_lines(text);
    if (lines.empty() || lines[0].rfind("links ", 0) != 0)
        throw std::invalid_argument("parse_witness: expected \"links <m>\" header");
    const int links = std::stoi(lines[0].substr(6));
    std::vector<ExactPoint> vs;
    std::map<std::string, int> assignment;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string line = io::trim(lines[i]);
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("assign ", 0) == 0) {
            std::istringstream row(line.substr(7));
            std::string label;
            int link;
            if (!(row >> label >> link))
                throw std::invalid_argument("parse_witness: bad assign line");
            assignment[label] = link;
            continue;
        }
        vs.push_back(io::parse_point(line));
    }
    CoverWitness w{Polyline(std::move(vs)), std::move(assignment)};
    if (w.polyline.link_count() != links)
        throw std::invalid_argument("parse_witness: link count mismatch");
    return w;
}

}  // namespace raycover
