#pragma once

// Exact 2D primitives and predicates.  Every decision in the library goes
// through these; no floating point is involved anywhere on a decision path.

#include "raycover/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace raycover {

struct ExactPoint {
    Rational x;
    Rational y;

    friend bool operator==(const ExactPoint&, const ExactPoint&) = default;

    /// Lexicographic (x, then y); used for canonical orderings, not geometry.
    friend bool operator<(const ExactPoint& a, const ExactPoint& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }

    std::string str() const { return "(" + x.str() + ", " + y.str() + ")"; }

    /// Max bit length over the four integers of the two coordinates.
    int bit_length() const { return std::max(x.bit_length(), y.bit_length()); }
};

struct Direction {
    Rational dx;
    Rational dy;

    friend bool operator==(const Direction&, const Direction&) = default;
};

/// Closed segment with distinct endpoints.
struct Segment {
    Segment(ExactPoint p_, ExactPoint q_) : p(std::move(p_)), q(std::move(q_)) {
        if (p == q) throw std::invalid_argument("Segment: degenerate (p == q)");
    }
    ExactPoint p;
    ExactPoint q;

    friend bool operator==(const Segment&, const Segment&) = default;
};

/// Half-line from origin along a nonzero direction (t >= 0).  Operations that
/// work on the supporting line say so and treat the direction bidirectionally.
struct Ray {
    Ray(ExactPoint origin_, Direction dir_) : origin(std::move(origin_)), dir(std::move(dir_)) {
        if (dir.dx.is_zero() && dir.dy.is_zero())
            throw std::invalid_argument("Ray: zero direction");
    }
    ExactPoint origin;
    Direction dir;

    /// Same origin and supporting line, opposite direction.
    Ray complement() const { return Ray(origin, Direction{-dir.dx, -dir.dy}); }
};

inline Rational cross(const Direction& a, const Direction& b) { return a.dx * b.dy - a.dy * b.dx; }
inline Rational dot(const Direction& a, const Direction& b) { return a.dx * b.dx + a.dy * b.dy; }
inline Direction delta(const ExactPoint& from, const ExactPoint& to) {
    return Direction{to.x - from.x, to.y - from.y};
}

/// Sign of the cross product (b-a) x (c-a): +1 left turn, -1 right turn, 0 collinear.
inline int orientation(const ExactPoint& a, const ExactPoint& b, const ExactPoint& c) {
    return cross(delta(a, b), delta(a, c)).sign();
}

/// Result of intersecting segments, rays, or lines.  Unbounded coincident
/// overlaps (collinear rays pointing the same way, identical lines) cannot be
/// carried by a Segment, so they get their own tags.
struct Intersection {
    enum class Kind { Empty, Point, Overlap, OverlapRay, OverlapLine };

    Kind kind = Kind::Empty;
    std::optional<ExactPoint> point;    // Kind::Point
    std::optional<Segment> overlap;     // Kind::Overlap
    std::optional<Ray> overlap_ray;     // Kind::OverlapRay

    static Intersection empty() { return {}; }
    static Intersection at(ExactPoint p) {
        Intersection r;
        r.kind = Kind::Point;
        r.point = std::move(p);
        return r;
    }
    static Intersection over(Segment s) {
        Intersection r;
        r.kind = Kind::Overlap;
        r.overlap = std::move(s);
        return r;
    }
    static Intersection over(Ray s) {
        Intersection r;
        r.kind = Kind::OverlapRay;
        r.overlap_ray = std::move(s);
        return r;
    }
    static Intersection whole_line() {
        Intersection r;
        r.kind = Kind::OverlapLine;
        return r;
    }

    bool nonempty() const { return kind != Kind::Empty; }
};

inline bool point_on_segment(const ExactPoint& pt, const Segment& s) {
    if (orientation(s.p, s.q, pt) != 0) return false;
    const Rational t = dot(delta(s.p, pt), delta(s.p, s.q));
    if (t.sign() < 0) return false;
    return t <= dot(delta(s.p, s.q), delta(s.p, s.q));
}

/// Endpoint-inclusive containment of one segment in another (implies collinearity).
inline bool segment_contains(const Segment& outer, const Segment& inner) {
    return point_on_segment(inner.p, outer) && point_on_segment(inner.q, outer);
}

namespace detail {

/// Scalar position of a collinear point along (origin, dir), in units of |dir|^2.
inline Rational line_param(const ExactPoint& origin, const Direction& dir, const ExactPoint& pt) {
    return dot(delta(origin, pt), dir) / dot(dir, dir);
}

inline ExactPoint line_point(const ExactPoint& origin, const Direction& dir, const Rational& t) {
    return ExactPoint{origin.x + t * dir.dx, origin.y + t * dir.dy};
}

/// Intersection parameters (t1, t2) of two non-parallel lines given as
/// origin + t * dir; empty when the directions are parallel.
inline std::optional<std::pair<Rational, Rational>> line_line_params(const ExactPoint& o1,
                                                                     const Direction& d1,
                                                                     const ExactPoint& o2,
                                                                     const Direction& d2) {
    const Rational den = cross(d1, d2);
    if (den.is_zero()) return std::nullopt;
    const Direction o1o2 = delta(o1, o2);
    return std::make_pair(cross(o1o2, d2) / den, cross(o1o2, d1) / den);
}

}  // namespace detail

/// Exact intersection of two closed segments.
inline Intersection segment_intersect(const Segment& s1, const Segment& s2) {
    const Direction d1 = delta(s1.p, s1.q);
    const Direction d2 = delta(s2.p, s2.q);
    const auto params = detail::line_line_params(s1.p, d1, s2.p, d2);
    if (params) {
        const auto& [t1, t2] = *params;
        if (t1.sign() < 0 || t1 > Rational(1) || t2.sign() < 0 || t2 > Rational(1))
            return Intersection::empty();
        return Intersection::at(detail::line_point(s1.p, d1, t1));
    }
    // Parallel: either disjoint lines or collinear.
    if (orientation(s1.p, s1.q, s2.p) != 0) return Intersection::empty();
    // Collinear: overlap is an interval in s1's parameter.
    Rational a = detail::line_param(s1.p, d1, s2.p);
    Rational b = detail::line_param(s1.p, d1, s2.q);
    if (a > b) std::swap(a, b);
    const Rational lo = a < Rational(0) ? Rational(0) : a;
    const Rational hi = b > Rational(1) ? Rational(1) : b;
    if (lo > hi) return Intersection::empty();
    if (lo == hi) return Intersection::at(detail::line_point(s1.p, d1, lo));
    return Intersection::over(
        Segment(detail::line_point(s1.p, d1, lo), detail::line_point(s1.p, d1, hi)));
}

/// Exact intersection of two rays (parameter t >= 0 on each).
inline Intersection ray_intersect(const Ray& r1, const Ray& r2) {
    const auto params = detail::line_line_params(r1.origin, r1.dir, r2.origin, r2.dir);
    if (params) {
        const auto& [t1, t2] = *params;
        if (t1.sign() < 0 || t2.sign() < 0) return Intersection::empty();
        return Intersection::at(detail::line_point(r1.origin, r1.dir, t1));
    }
    if (orientation(r1.origin, detail::line_point(r1.origin, r1.dir, Rational(1)), r2.origin) != 0)
        return Intersection::empty();
    // Collinear rays.
    const Rational u = detail::line_param(r1.origin, r1.dir, r2.origin);
    if (dot(r1.dir, r2.dir).sign() > 0) {
        // Same direction: the farther origin starts the common ray.
        return Intersection::over(u.sign() > 0 ? r2 : r1);
    }
    // Opposite directions: overlap is the segment between the origins, if any.
    if (u.sign() < 0) return Intersection::empty();
    if (u.is_zero()) return Intersection::at(r1.origin);
    return Intersection::over(Segment(r1.origin, r2.origin));
}

/// Intersection of the two supporting lines (each Ray read bidirectionally).
inline Intersection line_intersect(const Ray& r1, const Ray& r2) {
    const auto params = detail::line_line_params(r1.origin, r1.dir, r2.origin, r2.dir);
    if (params) return Intersection::at(detail::line_point(r1.origin, r1.dir, params->first));
    if (orientation(r1.origin, detail::line_point(r1.origin, r1.dir, Rational(1)), r2.origin) != 0)
        return Intersection::empty();
    return Intersection::whole_line();
}

}  // namespace raycover
