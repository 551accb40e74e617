#pragma once

// Turns a ray embedding into a Connected Segment Polyline Cover instance of
// 2n+3 segments.  Each ray r is replaced by a needle: two segments sharing a
// bottom apex on the supporting line of the complement ray at y = y_low, with
// upper endpoints straddling the ray origin at +-eps.  Three leading segments
// force the start of any minimal covering polyline:
//
//   s_h  horizontal, just above the apexes, crossing every needle interior;
//   s_v  vertical at the left end of s_h, rising above every ray origin
//        (every needle supporting line crosses it below the apexes);
//   s_t  short horizontal at the top, running right and ending left of every
//        ray origin, so its supporting line crosses every needle extension.
//
// eps starts at 1/4 and halves until validate_epsilon accepts; all checks are
// exact, so correctness never rests on an a-priori eps bound.

#include "raycover/geometry.hpp"
#include "raycover/ray_embed.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace raycover {

struct LabeledSegment {
    std::string label;
    Segment seg;
};

struct Needle {
    Segment left;
    Segment right;
    ExactPoint apex;
    int chord = 0;
};

struct NeedleInfo {
    int chord = 0;
    int a = 0, b = 0;      // curve indices of the originating ray
    ExactPoint origin;     // ray origin (a, a!)
    ExactPoint apex;
    int left_index = 0;    // indices into CoverInstance::segments
    int right_index = 0;
};

struct CoverInstance {
    std::vector<LabeledSegment> segments;
    int k = 0;

    // Construction metadata; empty `needles` marks an ad-hoc instance.
    Rational y_min;
    Rational y_low;
    Rational epsilon;
    std::vector<NeedleInfo> needles;
    int lead_h = 0, lead_v = 1, lead_t = 2;
    int point_count = 0;  // 2n

    bool has_metadata() const { return !needles.empty(); }

    const Segment& segment(int i) const { return segments[i].seg; }

    /// The i-th needle as a value (both segments share the apex endpoint).
    Needle needle(int i) const {
        const NeedleInfo& nd = needles.at(i);
        return Needle{segment(nd.left_index), segment(nd.right_index), nd.apex, nd.chord};
    }
};

namespace detail {

inline Rational x_at_y(const ExactPoint& p1, const ExactPoint& p2, const Rational& y) {
    // Requires p1.y != p2.y.
    return p1.x + (y - p1.y) * (p2.x - p1.x) / (p2.y - p1.y);
}

inline Rational y_at_x(const ExactPoint& p1, const ExactPoint& p2, const Rational& x) {
    // Requires p1.x != p2.x.
    return p1.y + (x - p1.x) * (p2.y - p1.y) / (p2.x - p1.x);
}

/// Nonempty when two segments are collinear or three share a common point.
inline std::optional<std::string> general_position_violation(
    const std::vector<LabeledSegment>& segments) {
    const int m = static_cast<int>(segments.size());
    std::map<ExactPoint, std::set<int>> point_users;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const auto inter = segment_intersect(segments[i].seg, segments[j].seg);
            if (inter.kind == Intersection::Kind::Overlap)
                return "collinear segments " + segments[i].label + ", " + segments[j].label;
            // Collinear segments need not touch.
            const Direction di = delta(segments[i].seg.p, segments[i].seg.q);
            const Direction dj = delta(segments[j].seg.p, segments[j].seg.q);
            if (cross(di, dj).is_zero() &&
                orientation(segments[i].seg.p, segments[i].seg.q, segments[j].seg.p) == 0)
                return "collinear segments " + segments[i].label + ", " + segments[j].label;
            if (inter.kind != Intersection::Kind::Point) continue;
            auto& users = point_users[*inter.point];
            users.insert(i);
            users.insert(j);
            if (users.size() >= 3)
                return "three segments share a point at " + inter.point->str();
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// True iff the union of the instance's segments is connected (graph on
/// segments with edges where they intersect).
inline bool connectivity_check(const CoverInstance& ci) {
    const int m = static_cast<int>(ci.segments.size());
    if (m == 0) return false;
    if (m == 1) return true;
    std::vector<int> comp(m, -1);
    std::vector<int> stack{0};
    comp[0] = 0;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v = 0; v < m; ++v) {
            if (comp[v] >= 0 || v == u) continue;
            if (segment_intersect(ci.segment(u), ci.segment(v)).nonempty()) {
                comp[v] = 0;
                stack.push_back(v);
            }
        }
    }
    for (int v = 0; v < m; ++v)
        if (comp[v] < 0) return false;
    return true;
}

/// Exact acceptance test for a candidate eps.  Verifies the bend structure
/// the cover argument rests on:
///   - both needle segments rise strictly rightward (apex left of both tops);
///   - supporting lines of needle segments from different needles are never
///     parallel, and their crossing lies strictly above s_h; it lies strictly
///     beyond both upper endpoints exactly when the originating rays
///     intersect, and strictly before at least one upper endpoint otherwise;
///   - every needle supporting line passes s_v's line strictly below the apex
///     level and s_t's line strictly right of s_t's short end;
///   - no two segments are collinear and no three share a point.
inline bool validate_epsilon(const CoverInstance& ci) {
    if (!ci.has_metadata()) throw std::invalid_argument("validate_epsilon: missing metadata");
    const Rational y_h = ci.segment(ci.lead_h).p.y;
    const Rational s_v_x = ci.segment(ci.lead_v).p.x;
    const Rational y_top1 = ci.segment(ci.lead_t).p.y;
    const Rational x_t = ci.segment(ci.lead_t).q.x;
    const int n = static_cast<int>(ci.needles.size());

    for (const NeedleInfo& nd : ci.needles) {
        const Rational left_top_x = ci.segment(nd.left_index).q.x;
        if (!(nd.apex.x < left_top_x)) return false;  // both segments must lean right
    }

    // Rays regenerated from curve indices for the adjacency ground truth.
    std::vector<Ray> rays;
    rays.reserve(n);
    for (const NeedleInfo& nd : ci.needles)
        rays.push_back(Ray(nd.origin, delta(nd.origin, factorial_point(nd.b))));

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const bool adjacent = ray_intersect(rays[i], rays[j]).nonempty();
            for (int si : {ci.needles[i].left_index, ci.needles[i].right_index}) {
                for (int sj : {ci.needles[j].left_index, ci.needles[j].right_index}) {
                    const Segment& a = ci.segment(si);
                    const Segment& b = ci.segment(sj);
                    const auto params =
                        detail::line_line_params(a.p, delta(a.p, a.q), b.p, delta(b.p, b.q));
                    if (!params) return false;  // parallel needle lines
                    const ExactPoint q = detail::line_point(a.p, delta(a.p, a.q), params->first);
                    if (!(q.y > y_h)) return false;
                    const bool beyond_both =
                        q.y > ci.needles[i].origin.y && q.y > ci.needles[j].origin.y;
                    if (adjacent != beyond_both) return false;
                }
            }
        }
    }

    for (const NeedleInfo& nd : ci.needles) {
        for (int si : {nd.left_index, nd.right_index}) {
            const Segment& s = ci.segment(si);
            // dx > 0 holds by the first check, so both evaluations are defined.
            if (!(detail::y_at_x(s.p, s.q, s_v_x) < ci.y_low)) return false;
            if (!(detail::x_at_y(s.p, s.q, y_top1) > x_t)) return false;
        }
    }

    return !detail::general_position_violation(ci.segments).has_value();
}

namespace detail {

inline CoverInstance assemble_cover_instance(const RayEmbedding& e, const Rational& y_min,
                                             const Rational& eps) {
    const int n = e.chord_count();
    CoverInstance ci;
    ci.y_min = y_min;
    ci.y_low = y_min - Rational(1);
    ci.epsilon = eps;
    ci.point_count = 2 * n;
    ci.k = 2 * n + 3;

    struct Built {
        int chord;
        ExactPoint origin, apex;
        Segment left, right;
    };
    std::vector<Built> built;
    for (int i = 0; i < n; ++i) {
        const Ray& r = e.rays[i];
        const Rational apex_x =
            r.origin.x + (ci.y_low - r.origin.y) * r.dir.dx / r.dir.dy;
        const ExactPoint apex{apex_x, ci.y_low};
        const ExactPoint top_l{r.origin.x - eps, r.origin.y};
        const ExactPoint top_r{r.origin.x + eps, r.origin.y};
        built.push_back({i + 1, r.origin, apex, Segment(apex, top_l), Segment(apex, top_r)});
    }

    Rational x_min = built.front().apex.x, x_max = built.front().apex.x;
    Rational y_top = built.front().origin.y;
    Rational min_origin_x = built.front().origin.x;
    for (const Built& b : built) {
        for (const ExactPoint* p : {&b.apex, &b.left.q, &b.right.q}) {
            x_min = std::min(x_min, p->x);
            x_max = std::max(x_max, p->x);
        }
        y_top = std::max(y_top, b.origin.y);
        min_origin_x = std::min(min_origin_x, b.origin.x);
    }

    const Rational y_h = (ci.y_low + y_min) / Rational(2);
    const Rational sv_x = x_min - Rational(1);
    const Rational y_top1 = y_top + Rational(1);
    ci.segments.push_back({"s_h", Segment({sv_x, y_h}, {x_max + Rational(1), y_h})});
    ci.segments.push_back({"s_v", Segment({sv_x, y_h}, {sv_x, y_top1})});
    ci.segments.push_back({"s_t", Segment({sv_x, y_top1}, {min_origin_x - Rational(1), y_top1})});

    for (const Built& b : built) {
        NeedleInfo info;
        info.chord = b.chord;
        info.a = e.positions.at(b.chord).first;
        info.b = e.positions.at(b.chord).second;
        info.origin = b.origin;
        info.apex = b.apex;
        info.left_index = static_cast<int>(ci.segments.size());
        ci.segments.push_back({"n" + std::to_string(b.chord) + "l", b.left});
        info.right_index = static_cast<int>(ci.segments.size());
        ci.segments.push_back({"n" + std::to_string(b.chord) + "r", b.right});
        ci.needles.push_back(info);
    }
    return ci;
}

}  // namespace detail

/// Builds the cover instance for an embedding: k = 2n+3 segments, with eps
/// halved from 1/4 until validate_epsilon accepts.  The iteration cap only
/// trips on a construction bug, never on a valid embedding.
inline CoverInstance build_cover_instance(const RayEmbedding& e) {
    const int n = e.chord_count();
    if (n < 1) throw std::invalid_argument("build_cover_instance: need at least one ray");

    // Lowest y over all pairwise supporting-line intersections and all ray
    // origins; the origins keep the apex level below every needle top even
    // when the lines only cross high above the curve.
    std::optional<Rational> y_min;
    auto fold = [&y_min](const Rational& y) {
        if (!y_min || y < *y_min) y_min = y;
    };
    for (int i = 0; i < n; ++i) {
        fold(e.rays[i].origin.y);
        for (int j = i + 1; j < n; ++j) {
            const auto inter = line_intersect(e.rays[i], e.rays[j]);
            if (inter.kind == Intersection::Kind::Point) fold(inter.point->y);
        }
    }

    Rational eps = rat(1, 4);
    for (int round = 0; round < 80; ++round) {
        CoverInstance ci = detail::assemble_cover_instance(e, *y_min, eps);
        if (validate_epsilon(ci)) return ci;
        eps = eps / Rational(2);
    }
    throw std::logic_error("build_cover_instance: epsilon validation did not converge");
}

}  // namespace raycover
