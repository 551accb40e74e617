#pragma once

// Directed Hausdorff predicates, the reduction from a cover instance to
// Directed Curve Simplification at delta = 0, and the tolerance analysis that
// bounds how far delta can grow before the bend structure changes.
//
// The Hausdorff test works per edge of P: for each edge f of Q the set of
// parameters of e within distance delta of f is a closed interval whose
// endpoints are roots of rational quadratics.  Those roots (values
// a + b*sqrt(d) with rational a, b, d) are compared exactly, and the
// intervals must cover [0, 1].  No floating point enters any verdict.

#include "raycover/cover_solver.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace raycover {

/// Exact value a + b*sqrt(d) with rational a, b and rational d >= 0.
struct QuadExpr {
    Rational a;
    Rational b;
    Rational d;

    QuadExpr() = default;
    QuadExpr(Rational a_) : a(std::move(a_)) {}
    QuadExpr(Rational a_, Rational b_, Rational d_)
        : a(std::move(a_)), b(std::move(b_)), d(std::move(d_)) {
        if (d.sign() < 0) throw std::invalid_argument("QuadExpr: negative radicand");
        if (d.is_zero() || b.is_zero()) {
            b = Rational(0);
            d = Rational(0);
        }
    }
};

namespace detail {

/// Sign of A + B*sqrt(D), D >= 0.
inline int sign_one_radical(const Rational& A, const Rational& B, const Rational& D) {
    if (B.is_zero() || D.is_zero()) return A.sign();
    if (A.is_zero()) return B.sign();
    if (A.sign() == B.sign()) return A.sign();
    const Rational lhs = A * A;
    const Rational rhs = B * B * D;
    if (lhs == rhs) return 0;
    return lhs > rhs ? A.sign() : B.sign();
}

/// Sign of A + B*sqrt(D1) + C*sqrt(D2), D1, D2 >= 0.
inline int sign_two_radicals(const Rational& A, const Rational& B, const Rational& D1,
                             const Rational& C, const Rational& D2) {
    if (B.is_zero() || D1.is_zero()) return sign_one_radical(A, C, D2);
    if (C.is_zero() || D2.is_zero()) return sign_one_radical(A, B, D1);
    int s_sign;  // sign of B*sqrt(D1) + C*sqrt(D2)
    if (B.sign() == C.sign()) {
        s_sign = B.sign();
    } else {
        const Rational lhs = B * B * D1;
        const Rational rhs = C * C * D2;
        if (lhs == rhs) return A.sign();  // the radicals cancel exactly
        s_sign = lhs > rhs ? B.sign() : C.sign();
    }
    if (A.is_zero()) return s_sign;
    if (A.sign() == s_sign) return A.sign();
    // Compare |A| with |S| via A^2 - S^2 = (A^2 - B^2 D1 - C^2 D2) - 2BC sqrt(D1 D2).
    const int r = sign_one_radical(A * A - B * B * D1 - C * C * D2, Rational(-2) * B * C, D1 * D2);
    if (r == 0) return 0;
    return r > 0 ? A.sign() : s_sign;
}

}  // namespace detail

/// Exact three-way comparison of two quadratic-surd values.
inline int quad_compare(const QuadExpr& u, const QuadExpr& v) {
    return detail::sign_two_radicals(u.a - v.a, u.b, u.d, -v.b, v.d);
}
inline bool quad_le(const QuadExpr& u, const QuadExpr& v) { return quad_compare(u, v) <= 0; }
inline bool quad_lt(const QuadExpr& u, const QuadExpr& v) { return quad_compare(u, v) < 0; }

namespace detail {

struct ParamInterval {
    QuadExpr lo;
    QuadExpr hi;
};

/// Solutions of A t^2 + B t + C <= 0 (A >= 0) intersected with the rational
/// window [w_lo, w_hi]; appends the interval, if nonempty, to `out`.
inline void append_quadratic_window(const Rational& A, const Rational& B, const Rational& C,
                                    const Rational& w_lo, const Rational& w_hi,
                                    std::vector<ParamInterval>& out) {
    if (w_lo > w_hi) return;
    if (A.is_zero()) {
        if (B.is_zero()) {
            if (C.sign() <= 0) out.push_back({QuadExpr(w_lo), QuadExpr(w_hi)});
            return;
        }
        const Rational t0 = -C / B;
        if (B.sign() > 0) {
            if (t0 < w_lo) return;
            out.push_back({QuadExpr(w_lo), QuadExpr(t0 < w_hi ? t0 : w_hi)});
        } else {
            if (t0 > w_hi) return;
            out.push_back({QuadExpr(t0 > w_lo ? t0 : w_lo), QuadExpr(w_hi)});
        }
        return;
    }
    const Rational disc = B * B - Rational(4) * A * C;
    if (disc.sign() < 0) return;
    const Rational center = -B / (Rational(2) * A);
    const Rational scale = Rational(1) / (Rational(2) * A);
    QuadExpr lo(center, -scale, disc);
    QuadExpr hi(center, scale, disc);
    if (quad_lt(lo, QuadExpr(w_lo))) lo = QuadExpr(w_lo);
    if (quad_lt(QuadExpr(w_hi), hi)) hi = QuadExpr(w_hi);
    if (quad_le(lo, hi)) out.push_back({std::move(lo), std::move(hi)});
}

/// Intervals of e's parameter within distance `tol` of segment f, clipped to
/// [0, 1].  Emits up to three pieces (two endpoint circles, one perpendicular
/// band); their union is the true, convex interval.
inline void append_edge_intervals(const Segment& e, const Segment& f, const Rational& tol,
                                  std::vector<ParamInterval>& out) {
    const Direction de = raycover::delta(e.p, e.q);
    const Direction df = raycover::delta(f.p, f.q);
    const Rational L2 = dot(df, df);
    const Rational tol2 = tol * tol;

    // Projection parameter of e(t) onto f's line: u(t) = u0 + u1 t.
    const Rational u0 = dot(raycover::delta(f.p, e.p), df) / L2;
    const Rational u1 = dot(de, df) / L2;

    struct Window {
        Rational lo, hi;
        bool empty = false;
    };
    const Rational zero(0), one(1);
    Window wp{zero, one}, wq{zero, one}, wline{zero, one};
    if (u1.is_zero()) {
        wp.empty = u0.sign() > 0;
        wq.empty = u0 < one;
        wline.empty = u0.sign() < 0 || u0 > one;
    } else {
        const Rational t_at0 = -u0 / u1;
        const Rational t_at1 = (one - u0) / u1;
        if (u1.sign() > 0) {
            wp.hi = std::min(t_at0, one);
            wq.lo = std::max(t_at1, zero);
            wline.lo = std::max(t_at0, zero);
            wline.hi = std::min(t_at1, one);
        } else {
            wp.lo = std::max(t_at0, zero);
            wq.hi = std::min(t_at1, one);
            wline.lo = std::max(t_at1, zero);
            wline.hi = std::min(t_at0, one);
        }
        wp.empty = wp.lo > wp.hi;
        wq.empty = wq.lo > wq.hi;
        wline.empty = wline.lo > wline.hi;
    }

    auto endpoint_piece = [&](const ExactPoint& c, const Window& w) {
        if (w.empty) return;
        const Direction g = raycover::delta(c, e.p);
        append_quadratic_window(dot(de, de), Rational(2) * dot(g, de), dot(g, g) - tol2, w.lo,
                                w.hi, out);
    };
    endpoint_piece(f.p, wp);
    endpoint_piece(f.q, wq);
    if (!wline.empty) {
        // Squared distance to f's supporting line: (alpha + beta t)^2 / L2.
        const Rational alpha = cross(raycover::delta(f.p, e.p), df);
        const Rational beta = cross(de, df);
        append_quadratic_window(beta * beta, Rational(2) * alpha * beta,
                                alpha * alpha - tol2 * L2, wline.lo, wline.hi, out);
    }
}

/// Greedy exact check that the intervals cover [0, 1].
inline bool intervals_cover_unit(std::vector<ParamInterval>& intervals) {
    std::sort(intervals.begin(), intervals.end(),
              [](const ParamInterval& x, const ParamInterval& y) { return quad_lt(x.lo, y.lo); });
    QuadExpr reach{Rational(0)};
    const QuadExpr one{Rational(1)};
    std::size_t i = 0;
    while (quad_lt(reach, one)) {
        QuadExpr furthest = reach;
        while (i < intervals.size() && quad_le(intervals[i].lo, reach)) {
            if (quad_lt(furthest, intervals[i].hi)) furthest = intervals[i].hi;
            ++i;
        }
        if (!quad_lt(reach, furthest)) return false;
        reach = furthest;
    }
    return true;
}

}  // namespace detail

/// Directed Hausdorff predicate over edge collections: true iff every point
/// of every edge in `p_edges` lies within `tol` of the union of `q_edges`.
inline bool directed_hausdorff_leq(const std::vector<Segment>& p_edges,
                                   const std::vector<Segment>& q_edges, const Rational& tol) {
    if (tol.sign() < 0) throw std::invalid_argument("directed_hausdorff_leq: negative delta");
    if (p_edges.empty()) return true;
    if (q_edges.empty()) return false;
    for (const Segment& e : p_edges) {
        std::vector<detail::ParamInterval> intervals;
        for (const Segment& f : q_edges) detail::append_edge_intervals(e, f, tol, intervals);
        if (!detail::intervals_cover_unit(intervals)) return false;
    }
    return true;
}

inline bool directed_hausdorff_leq(const Polyline& p, const Polyline& q, const Rational& tol) {
    return directed_hausdorff_leq(p.links(), q.links(), tol);
}

/// Exact, purely rational containment oracle: every edge of `p_edges` lies in
/// the union of `q_edges`.  Splits each p-edge at all boundary events, after
/// which an elementary piece is covered iff it sits inside a single q-edge.
/// Independent of the interval machinery; the two must agree at delta = 0.
inline bool image_contained(const std::vector<Segment>& p_edges,
                            const std::vector<Segment>& q_edges) {
    for (const Segment& e : p_edges) {
        const Direction de = delta(e.p, e.q);
        std::vector<Rational> cuts{Rational(0), Rational(1)};
        for (const Segment& f : q_edges) {
            const auto inter = segment_intersect(e, f);
            if (inter.kind == Intersection::Kind::Point)
                cuts.push_back(detail::line_param(e.p, de, *inter.point));
            else if (inter.kind == Intersection::Kind::Overlap) {
                cuts.push_back(detail::line_param(e.p, de, inter.overlap->p));
                cuts.push_back(detail::line_param(e.p, de, inter.overlap->q));
            }
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            if (cuts[i + 1] <= Rational(0) || cuts[i] >= Rational(1)) continue;
            const ExactPoint a = detail::line_point(e.p, de, cuts[i]);
            const ExactPoint b = detail::line_point(e.p, de, cuts[i + 1]);
            bool covered = false;
            for (const Segment& f : q_edges)
                if (point_on_segment(a, f) && point_on_segment(b, f)) {
                    covered = true;
                    break;
                }
            if (!covered) return false;
        }
    }
    return true;
}

struct SimplificationInstance {
    Polyline input;
    int k = 0;
    Rational delta;
};

/// Tolerance bound for a construction over m curve points: any
/// 0 < delta < 3/(4 * m!) keeps the bend structure of the reduction intact.
inline Rational cover_delta_bound(int curve_points) {
    if (curve_points < 1) throw std::invalid_argument("cover_delta_bound: need >= 1 point");
    return Rational(3) / (Rational(4) * Rational(big_factorial(curve_points)));
}

/// Exclusive upper bound on the safe tolerance for a needle instance.
inline Rational safe_delta(const CoverInstance& ci) {
    if (!ci.has_metadata()) throw std::invalid_argument("safe_delta: ad-hoc instance");
    return cover_delta_bound(ci.point_count);
}

/// A ready-to-use valid tolerance: half the bound.
inline Rational safe_delta_half(const CoverInstance& ci) {
    return safe_delta(ci) / Rational(2);
}

/// Builds the Directed Curve Simplification input: a covering walk over the
/// arrangement of the instance segments (every arrangement edge traversed at
/// least once, at most twice), whose image is exactly the segment union.
inline SimplificationInstance build_dcs_instance(const CoverInstance& ci, const Rational& tol) {
    if (!connectivity_check(ci)) throw std::invalid_argument("build_dcs_instance: disconnected");
    if (tol.sign() < 0) throw std::invalid_argument("build_dcs_instance: negative delta");
    if (tol.sign() > 0 && !(tol < safe_delta(ci)))
        throw std::invalid_argument("build_dcs_instance: delta not below the safe bound");

    std::map<ExactPoint, int> vertex_id;
    std::vector<ExactPoint> vertex;
    auto vid = [&](const ExactPoint& p) {
        auto it = vertex_id.find(p);
        if (it != vertex_id.end()) return it->second;
        const int id = static_cast<int>(vertex.size());
        vertex_id.emplace(p, id);
        vertex.push_back(p);
        return id;
    };
    struct Edge {
        int u, v;
    };
    std::vector<Edge> edges;
    const int m = static_cast<int>(ci.segments.size());
    for (int i = 0; i < m; ++i) {
        const Segment& s = ci.segment(i);
        const Direction ds = delta(s.p, s.q);
        std::vector<Rational> cuts{Rational(0), Rational(1)};
        for (int j = 0; j < m; ++j) {
            if (j == i) continue;
            const auto inter = segment_intersect(s, ci.segment(j));
            if (inter.kind == Intersection::Kind::Point)
                cuts.push_back(detail::line_param(s.p, ds, *inter.point));
            else if (inter.kind == Intersection::Kind::Overlap)
                throw std::invalid_argument("build_dcs_instance: collinear segments");
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c)
            edges.push_back({vid(detail::line_point(s.p, ds, cuts[c])),
                             vid(detail::line_point(s.p, ds, cuts[c + 1]))});
    }

    // Deterministic adjacency: neighbours in lexicographic point order.
    const int V = static_cast<int>(vertex.size());
    std::vector<std::vector<std::pair<int, int>>> adj(V);  // (neighbour, edge id)
    for (int eid = 0; eid < static_cast<int>(edges.size()); ++eid) {
        adj[edges[eid].u].push_back({edges[eid].v, eid});
        adj[edges[eid].v].push_back({edges[eid].u, eid});
    }
    for (auto& lst : adj)
        std::sort(lst.begin(), lst.end(), [&](const auto& x, const auto& y) {
            if (vertex[x.first] == vertex[y.first]) return x.second < y.second;
            return vertex[x.first] < vertex[y.first];
        });

    int start = 0;
    for (int v = 1; v < V; ++v)
        if (vertex[v] < vertex[start]) start = v;

    // Depth-first doubling walk: down and back over every edge, with the
    // final return step dropped, so the walk has exactly 2E vertices.
    std::vector<char> used(edges.size(), 0);
    std::vector<int> walk{start};
    auto dfs = [&](auto&& self, int u) -> void {
        for (const auto& [v, eid] : adj[u]) {
            if (used[eid]) continue;
            used[eid] = 1;
            walk.push_back(v);
            self(self, v);
            walk.push_back(u);
        }
    };
    dfs(dfs, start);
    if (walk.size() > 2) walk.pop_back();

    std::vector<ExactPoint> pts;
    pts.reserve(walk.size());
    for (int v : walk) pts.push_back(vertex[v]);
    return SimplificationInstance{Polyline(std::move(pts)), ci.k, tol};
}

/// Zero-tolerance solver: defers to the exact cover solver.  The returned
/// polyline has at most k links and directed Hausdorff distance 0 from the
/// instance input.
inline std::optional<Polyline> solve_dcs_zero(const SimplificationInstance& si,
                                              const CoverInstance& ci) {
    if (!si.delta.is_zero()) throw std::invalid_argument("solve_dcs_zero: delta must be 0");
    std::vector<Segment> union_edges;
    for (const LabeledSegment& ls : ci.segments) union_edges.push_back(ls.seg);
    if (si.k != ci.k || !image_contained(si.input.links(), union_edges) ||
        !image_contained(union_edges, si.input.links()))
        throw std::invalid_argument("solve_dcs_zero: instance pair mismatch");
    auto w = solve_cover(ci);
    if (!w) return std::nullopt;
    return w->polyline;
}

/// Wedge of lines that can cover a segment at tolerance delta, in the
/// enlarged form used by the margin analysis: bounds through points offset
/// +-2*delta horizontally from the segment endpoints, swapped at the two
/// ends, so the bounds cross at the midpoint.  tip = within delta of the
/// segment, tail = the rest of the wedge.
struct Cone {
    Segment core;
    Rational delta;
    Ray left_bound;   // through (bottom.x + 2d, bottom.y) and (top.x - 2d, top.y)
    Ray right_bound;  // through (bottom.x - 2d, bottom.y) and (top.x + 2d, top.y)
};

inline Cone make_needle_cone(const NeedleInfo& nd, const Rational& tol) {
    const Rational two_d = Rational(2) * tol;
    const ExactPoint lb_bot{nd.apex.x + two_d, nd.apex.y};
    const ExactPoint lb_top{nd.origin.x - two_d, nd.origin.y};
    const ExactPoint rb_bot{nd.apex.x - two_d, nd.apex.y};
    const ExactPoint rb_top{nd.origin.x + two_d, nd.origin.y};
    return Cone{Segment(nd.apex, nd.origin), tol, Ray(lb_bot, delta(lb_bot, lb_top)),
                Ray(rb_bot, delta(rb_bot, rb_top))};
}

enum class ConePairCase { Crossing, SideBySide, Nested };

struct ConePairReport {
    int chord_low = 0;  // needle with the smaller first curve index
    int chord_high = 0;
    ConePairCase kind = ConePairCase::Crossing;
    std::optional<Rational> margin;  // > 0 means the fattened tails stay apart
};

struct ConeReport {
    Rational delta;
    std::vector<ConePairReport> pairs;
    int violations = 0;
    std::optional<Rational> min_margin;
    bool leading_segments_in_tips = true;  // s_h meets every needle core
    bool ok() const { return violations == 0 && leading_segments_in_tips; }
};

/// Horizontal gap between the supporting lines of rays (a,b) and (c,d) at the
/// reference heights of the tolerance analysis (exact closed forms).
inline Rational needle_gap_side_by_side(int a, int b, int c) {
    const Rational fa(big_factorial(a)), fb(big_factorial(b)), fc(big_factorial(c));
    return Rational(a) + (fc - fa) * Rational(b - a) / (fb - fa) - Rational(c);
}

inline Rational needle_gap_nested(int a, int c, int d) {
    const Rational fa(big_factorial(a)), fc(big_factorial(c)), fd(big_factorial(d));
    return Rational(c) - (fc - fa) * Rational(d - c) / (fd - fc) - Rational(a);
}

/// Builds the enlarged cones of all needles and verifies that fattening to
/// `tol` introduces no tail-tail intersection between cones whose supporting
/// lines meet outside both segments.  Pairs are classified by the relative
/// order of their curve indices; crossing pairs already meet tail-to-tail at
/// delta = 0 and carry no constraint.
inline ConeReport check_cone_structure(const CoverInstance& ci, const Rational& tol) {
    if (!ci.has_metadata()) throw std::invalid_argument("check_cone_structure: ad-hoc instance");
    if (tol.sign() < 0) throw std::invalid_argument("check_cone_structure: negative delta");
    ConeReport report;
    report.delta = tol;
    const int n = static_cast<int>(ci.needles.size());
    std::vector<Cone> cones;
    cones.reserve(n);
    for (const NeedleInfo& nd : ci.needles) cones.push_back(make_needle_cone(nd, tol));

    auto x_on = [](const Ray& bound, const Rational& y) {
        // Bounds always span distinct heights, so this is well defined.
        const ExactPoint p2{bound.origin.x + bound.dir.dx, bound.origin.y + bound.dir.dy};
        return detail::x_at_y(bound.origin, p2, y);
    };

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            int lo = i, hi = j;
            if (ci.needles[j].a < ci.needles[i].a) std::swap(lo, hi);
            const int b = ci.needles[lo].b;
            const int c = ci.needles[hi].a, d = ci.needles[hi].b;
            ConePairReport pr;
            pr.chord_low = ci.needles[lo].chord;
            pr.chord_high = ci.needles[hi].chord;
            if (c < b && b < d) {
                pr.kind = ConePairCase::Crossing;
            } else if (b < c) {
                pr.kind = ConePairCase::SideBySide;
                // The low cone's tail passes right of the high cone's top:
                // the cones must still be separated at that height.
                const Rational& y_ref = ci.needles[hi].origin.y;
                pr.margin = x_on(cones[lo].left_bound, y_ref) - x_on(cones[hi].right_bound, y_ref);
            } else {
                pr.kind = ConePairCase::Nested;
                // (c,d) nests inside (a,b): separation at the low top height.
                const Rational& y_ref = ci.needles[lo].origin.y;
                pr.margin = x_on(cones[hi].left_bound, y_ref) - x_on(cones[lo].right_bound, y_ref);
            }
            if (pr.margin) {
                if (pr.margin->sign() <= 0) ++report.violations;
                if (!report.min_margin || *pr.margin < *report.min_margin)
                    report.min_margin = *pr.margin;
            }
            report.pairs.push_back(std::move(pr));
        }
    }

    const Segment& sh = ci.segment(ci.lead_h);
    for (const Cone& cone : cones)
        if (!segment_intersect(sh, cone.core).nonempty()) report.leading_segments_in_tips = false;
    return report;
}

struct EquivalenceReport {
    Rational delta;
    ConeReport cones;
    bool cover_exists = false;
    bool structure_preserved = false;
};

/// Evidence bundle for the nonzero-tolerance equivalence: at delta equal to
/// half the safe bound the cone structure is unchanged, so the verdict of the
/// exact zero-tolerance solver carries over.
inline EquivalenceReport equivalence_nonzero_delta(const CoverInstance& ci) {
    if (!ci.has_metadata() || static_cast<int>(ci.needles.size()) > 4)
        throw std::invalid_argument("equivalence_nonzero_delta: needs a needle instance, n <= 4");
    EquivalenceReport er;
    er.delta = safe_delta_half(ci);
    er.cones = check_cone_structure(ci, er.delta);
    er.structure_preserved = er.cones.ok();
    er.cover_exists = solve_cover(ci).has_value();
    return er;
}

}  // namespace raycover
