#pragma once

// Embeds a chord diagram as rays grounded on the curve y = x!: unrolling the
// circle assigns each chord endpoint a curve index k and the point (k, k!),
// and each chord becomes the ray from its lower point through its higher
// point, extended up-right.  The ray intersection graph then equals the
// circle graph, with all coordinates of modest bit length.

#include "raycover/chord_graph.hpp"
#include "raycover/geometry.hpp"

#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace raycover {

struct RayEmbedding {
    std::vector<Ray> rays;                      // rays[i] belongs to chord i+1
    std::map<int, std::pair<int, int>> positions;  // chord label -> curve indices (a, b), a < b

    int chord_count() const { return static_cast<int>(rays.size()); }
    int point_count() const { return 2 * chord_count(); }
};

inline ExactPoint factorial_point(int k) {
    return ExactPoint{Rational(k), Rational(big_factorial(static_cast<unsigned>(k)))};
}

/// Unrolls the diagram clockwise from position `start` (1-based index into
/// endpoint_order); the k-th endpoint encountered gets curve index k.
inline RayEmbedding embed(const ChordDiagram& d, int start = 1) {
    const int m = 2 * d.n;
    if (d.n > 0 && (start < 1 || start > m))
        throw std::invalid_argument("embed: start position out of range");
    RayEmbedding e;
    std::map<int, std::vector<int>> curve_index;  // label -> curve indices seen
    for (int k = 1; k <= m; ++k) {
        const int pos = (start - 1 + k - 1) % m;
        curve_index[d.endpoint_order[pos]].push_back(k);
    }
    for (int label = 1; label <= d.n; ++label) {
        int a = curve_index[label][0];
        int b = curve_index[label][1];
        if (a > b) std::swap(a, b);
        const ExactPoint pa = factorial_point(a);
        const ExactPoint pb = factorial_point(b);
        e.rays.push_back(Ray(pa, delta(pa, pb)));  // integral direction (b-a, b!-a!)
        e.positions[label] = {a, b};
    }
    return e;
}

/// Intersection graph of the embedded rays under the exact predicates.
inline Graph embedding_graph(const RayEmbedding& e) {
    Graph g(e.chord_count());
    for (int i = 0; i < e.chord_count(); ++i)
        for (int j = i + 1; j < e.chord_count(); ++j)
            if (ray_intersect(e.rays[i], e.rays[j]).nonempty()) g.add_edge(i + 1, j + 1);
    return g;
}

struct SubrayQuadruple {
    int a, b, c, d;
};

struct SubrayReport {
    bool ok = true;
    long long quadruples_checked = 0;
    std::optional<SubrayQuadruple> first_violation;
};

namespace detail {

/// Checks one quadruple of curve indices: with A the ray from (a,a!) through
/// (b,b!) and B its open sub-ray past (b,b!) (likewise C, D), the open
/// sub-rays B and D must be disjoint, and A meets C iff the closed chord
/// segments meet.
inline bool subray_quadruple_ok(int a, int b, int c, int d) {
    const ExactPoint pa = factorial_point(a), pb = factorial_point(b);
    const ExactPoint pc = factorial_point(c), pd = factorial_point(d);
    const Ray A(pa, delta(pa, pb));
    const Ray C(pc, delta(pc, pd));

    // Open sub-rays: intersection with strictly positive parameters on both.
    const auto params = detail::line_line_params(pb, A.dir, pd, C.dir);
    if (params) {
        if (params->first.sign() > 0 && params->second.sign() > 0) return false;
    } else {
        // Parallel supporting lines never happen for distinct factorial
        // chords, but collinear overlap would be a violation.
        if (orientation(pb, pa, pd) == 0) return false;
    }

    const bool rays_meet = ray_intersect(A, C).nonempty();
    const bool segments_meet = segment_intersect(Segment(pa, pb), Segment(pc, pd)).nonempty();
    return rays_meet == segments_meet;
}

}  // namespace detail

/// Exhaustively verifies, over all chord pairs {a<b}, {c<d} in [1..n], that
/// the factorial curve keeps sub-rays disjoint and ray intersections on the
/// chord segments.  Work may be split across threads; the reported first
/// violation is the lexicographically smallest either way.
inline SubrayReport check_subray_disjointness(int n, int threads = 1) {
    if (n < 2) throw std::invalid_argument("check_subray_disjointness: need n >= 2");
    std::vector<SubrayQuadruple> quads;
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            for (int c = 1; c <= n; ++c)
                for (int d = c + 1; d <= n; ++d) {
                    if (a == c && b == d) continue;
                    if (std::make_pair(a, b) > std::make_pair(c, d)) continue;  // symmetric
                    quads.push_back({a, b, c, d});
                }

    SubrayReport report;
    report.quadruples_checked = static_cast<long long>(quads.size());
    if (threads <= 1) {
        for (const auto& q : quads)
            if (!detail::subray_quadruple_ok(q.a, q.b, q.c, q.d)) {
                report.ok = false;
                report.first_violation = q;
                return report;
            }
        return report;
    }

    std::vector<std::optional<std::size_t>> first_bad(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < quads.size(); i += threads) {
                const auto& q = quads[i];
                if (!detail::subray_quadruple_ok(q.a, q.b, q.c, q.d)) {
                    first_bad[t] = i;
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    std::optional<std::size_t> best;
    for (const auto& idx : first_bad)
        if (idx && (!best || *idx < *best)) best = idx;
    if (best) {
        report.ok = false;
        report.first_violation = quads[*best];
    }
    return report;
}

struct EmbeddingReport {
    bool grounded = true;        // every origin is (k, k!) for an integer k
    bool directions_upright = true;  // every direction has dx > 0 and dy > 0
    bool bits_bounded = true;    // max bit length <= 4 * m * log2(m+1), m = point count
    int max_bits = 0;
    bool ok() const { return grounded && directions_upright && bits_bounded; }
};

/// Verifies the structural guarantees of an embedding: grounded on y = x!,
/// pointing into the upper-right quadrant, and coordinate bit lengths within
/// the fixed polynomial budget (checked exactly as 2^bits <= (m+1)^(4m)).
inline EmbeddingReport check_grounded_embedding(const RayEmbedding& e) {
    EmbeddingReport r;
    const int m = e.point_count();
    for (const Ray& ray : e.rays) {
        if (!ray.origin.x.is_integer() || ray.origin.x.sign() <= 0 ||
            ray.origin.x.num() > m ||
            ray.origin.y != Rational(big_factorial(static_cast<unsigned>(ray.origin.x.num()))))
            r.grounded = false;
        if (ray.dir.dx.sign() <= 0 || ray.dir.dy.sign() <= 0) r.directions_upright = false;
        for (const Rational* v : {&ray.origin.x, &ray.origin.y, &ray.dir.dx, &ray.dir.dy})
            r.max_bits = std::max(r.max_bits, v->bit_length());
    }
    if (m > 0) {
        const BigInt lhs = BigInt(1) << r.max_bits;
        const BigInt rhs = boost::multiprecision::pow(BigInt(m + 1), 4 * m);
        r.bits_bounded = lhs <= rhs;
    }
    return r;
}

}  // namespace raycover
