#include "raycover/curve_simplify.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace raycover;

namespace {

ExactPoint pt(long long x, long long y) { return ExactPoint{Rational(x), Rational(y)}; }

CoverInstance instance_of(std::vector<int> order, int start = 1) {
    return build_cover_instance(embed(ChordDiagram(std::move(order)), start));
}

double sq(double v) { return v * v; }

double point_segment_dist(double px, double py, double ax, double ay, double bx, double by) {
    const double dx = bx - ax, dy = by - ay;
    const double len2 = dx * dx + dy * dy;
    double t = ((px - ax) * dx + (py - ay) * dy) / len2;
    t = std::max(0.0, std::min(1.0, t));
    return std::sqrt(sq(px - (ax + t * dx)) + sq(py - (ay + t * dy)));
}

/// Dense-sampling floating estimate of the directed Hausdorff distance,
/// together with the sampling resolution (max gap between samples).
std::pair<double, double> sampled_hausdorff(const Polyline& p, const Polyline& q, int samples) {
    double worst = 0.0, resolution = 0.0;
    for (const Segment& e : p.links()) {
        const double ax = e.p.x.to_double(), ay = e.p.y.to_double();
        const double bx = e.q.x.to_double(), by = e.q.y.to_double();
        resolution = std::max(resolution, std::hypot(bx - ax, by - ay) / samples);
        for (int s = 0; s <= samples; ++s) {
            const double t = static_cast<double>(s) / samples;
            const double x = ax + t * (bx - ax), y = ay + t * (by - ay);
            double best = std::numeric_limits<double>::infinity();
            for (const Segment& f : q.links())
                best = std::min(best, point_segment_dist(x, y, f.p.x.to_double(),
                                                         f.p.y.to_double(), f.q.x.to_double(),
                                                         f.q.y.to_double()));
            worst = std::max(worst, best);
        }
    }
    return {worst, resolution};
}

Polyline random_polyline(std::mt19937_64& rng, int min_v = 2, int max_v = 4) {
    std::uniform_int_distribution<int> nv(min_v, max_v);
    std::uniform_int_distribution<int> coord(-5, 5);
    while (true) {
        const int n = nv(rng);
        std::vector<ExactPoint> vs;
        for (int i = 0; i < n; ++i) vs.push_back(pt(coord(rng), coord(rng)));
        bool ok = true;
        for (int i = 0; i + 1 < n; ++i)
            if (vs[i] == vs[i + 1]) ok = false;
        if (ok) return Polyline(vs);
    }
}

}  // namespace

TEST_CASE("quadratic surd signs and comparisons") {
    // 2 + 3*sqrt(4) == 8 exactly.
    CHECK(quad_compare(QuadExpr(Rational(2), Rational(3), Rational(4)), QuadExpr(Rational(8))) ==
          0);
    // sqrt(8) == 2*sqrt(2).
    CHECK(quad_compare(QuadExpr(Rational(0), Rational(1), Rational(8)),
                       QuadExpr(Rational(0), Rational(2), Rational(2))) == 0);
    // 1 + sqrt(2) vs sqrt(6): 5.83 vs 6 squared.
    CHECK(quad_compare(QuadExpr(Rational(1), Rational(1), Rational(2)),
                       QuadExpr(Rational(0), Rational(1), Rational(6))) < 0);
    // -sqrt(3) < 0 < sqrt(3).
    CHECK(quad_compare(QuadExpr(Rational(0), Rational(-1), Rational(3)), QuadExpr(Rational(0))) <
          0);
    CHECK(quad_compare(QuadExpr(Rational(0), Rational(1), Rational(3)), QuadExpr(Rational(0))) >
          0);
    CHECK_THROWS_AS(QuadExpr(Rational(0), Rational(1), Rational(-1)), std::invalid_argument);

    std::mt19937_64 rng(314159);
    std::uniform_int_distribution<int> small(-9, 9);
    std::uniform_int_distribution<int> rad(0, 9);
    for (int trial = 0; trial < 2000; ++trial) {
        const QuadExpr u(rat(small(rng), 1 + rad(rng)), rat(small(rng), 1 + rad(rng)),
                         Rational(rad(rng)));
        const QuadExpr v(rat(small(rng), 1 + rad(rng)), rat(small(rng), 1 + rad(rng)),
                         Rational(rad(rng)));
        const double ud = u.a.to_double() + u.b.to_double() * std::sqrt(u.d.to_double());
        const double vd = v.a.to_double() + v.b.to_double() * std::sqrt(v.d.to_double());
        if (std::abs(ud - vd) < 1e-9) continue;
        CHECK(quad_compare(u, v) == (ud < vd ? -1 : 1));
    }
}

TEST_CASE("directed hausdorff basics") {
    const Polyline p({pt(0, 0), pt(1, 0)});
    const Polyline q({pt(0, 1), pt(1, 1)});
    CHECK(directed_hausdorff_leq(p, p, Rational(0)));
    CHECK(directed_hausdorff_leq(p, q, Rational(1)));
    CHECK_FALSE(directed_hausdorff_leq(p, q, rat(99, 100)));
    CHECK(directed_hausdorff_leq(p, q, rat(101, 100)));

    // A sub-segment of one link is at distance zero.
    const Polyline zig({pt(0, 0), pt(4, 4), pt(8, 0)});
    const Polyline sub({pt(1, 1), pt(3, 3)});
    CHECK(directed_hausdorff_leq(sub, zig, Rational(0)));
    CHECK_FALSE(directed_hausdorff_leq(zig, sub, Rational(0)));

    CHECK_THROWS_AS(directed_hausdorff_leq(p, q, Rational(-1)), std::invalid_argument);
}

TEST_CASE("directed hausdorff against corner features") {
    // Point (2,2) is nearest to the corner vertex (1,0) of the L-shape.
    const Polyline p({pt(2, 2), pt(3, 2)});
    const Polyline corner({pt(0, 0), pt(1, 0), pt(1, -2)});
    // Distances: sqrt(5) from (2,2), sqrt(8) from (3,2); exact threshold at
    // delta^2 = 8.
    CHECK_FALSE(directed_hausdorff_leq(p, corner, rat(28, 10)));   // 2.8 < sqrt(8)
    CHECK(directed_hausdorff_leq(p, corner, rat(29, 10)));         // 2.9 > sqrt(8)
    // Exact critical value via a rational point: use delta = 3 (> sqrt 8).
    CHECK(directed_hausdorff_leq(p, corner, Rational(3)));
}

TEST_CASE("directed hausdorff is monotone in delta") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> dnum(0, 40);
    for (int trial = 0; trial < 60; ++trial) {
        const Polyline p = random_polyline(rng);
        const Polyline q = random_polyline(rng);
        const Rational d1 = rat(dnum(rng), 10);
        const Rational d2 = d1 + rat(dnum(rng), 10);
        if (directed_hausdorff_leq(p, q, d1)) CHECK(directed_hausdorff_leq(p, q, d2));
    }
}

TEST_CASE("zero-delta hausdorff equals exact image containment") {
    std::mt19937_64 rng(5150);
    int positives = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const Polyline q = random_polyline(rng, 3, 5);
        // A sub-path of q (with rational midpoints) is contained; a random
        // polyline almost never is.  Both verdicts must agree either way.
        const auto links = q.links();
        std::uniform_int_distribution<int> pick(0, static_cast<int>(links.size()) - 1);
        const Segment& l = links[pick(rng)];
        const ExactPoint mid{(l.p.x + l.q.x) / Rational(2), (l.p.y + l.q.y) / Rational(2)};
        const Polyline inside({l.p, mid});
        CHECK(directed_hausdorff_leq(inside.links(), links, Rational(0)));
        CHECK(image_contained(inside.links(), links));

        const Polyline random_p = random_polyline(rng);
        const bool h0 = directed_hausdorff_leq(random_p.links(), links, Rational(0));
        const bool ic = image_contained(random_p.links(), links);
        CHECK(h0 == ic);
        if (h0) ++positives;
    }
    (void)positives;
}

TEST_CASE("hausdorff agrees with a dense sampling oracle") {
    std::mt19937_64 rng(90210);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const Polyline p = random_polyline(rng);
        const Polyline q = random_polyline(rng);
        const auto [est, res] = sampled_hausdorff(p, q, 64);
        const double margin = 10.5 * res + 1e-6;
        const auto to_rat = [](double v) {
            return rat(static_cast<long long>(std::llround(v * (1 << 20))), 1 << 20);
        };
        CHECK(directed_hausdorff_leq(p, q, to_rat(est + margin)));
        if (est - margin > 1e-9) {
            CHECK_FALSE(directed_hausdorff_leq(p, q, to_rat(est - margin)));
            ++checked;
        }
    }
    CHECK(checked > 50);
}

TEST_CASE("dcs instance for a single segment") {
    CoverInstance ci;
    ci.k = 1;
    ci.segments.push_back({"a", Segment(pt(0, 0), pt(2, 2))});
    const SimplificationInstance si = build_dcs_instance(ci, Rational(0));
    CHECK(si.input.vertices.size() == 2);
    CHECK(si.k == 1);
    CHECK(si.delta.is_zero());
}

TEST_CASE("dcs instance for a plus sign doubles the star walk") {
    CoverInstance ci;
    ci.k = 2;
    ci.segments.push_back({"a", Segment(pt(-2, 0), pt(2, 0))});
    ci.segments.push_back({"b", Segment(pt(0, -2), pt(1, 3))});
    const SimplificationInstance si = build_dcs_instance(ci, Rational(0));
    CHECK(si.input.link_count() <= 8);  // 4 arrangement edges, each at most twice
    std::vector<Segment> segs{ci.segment(0), ci.segment(1)};
    CHECK(image_contained(si.input.links(), segs));
    CHECK(image_contained(segs, si.input.links()));
}

TEST_CASE("dcs instance of needle reductions covers the union exactly") {
    for (const auto& order :
         std::vector<std::vector<int>>{{1, 1}, {1, 2, 1, 2}, {1, 1, 2, 2}, {1, 2, 3, 1, 2, 3}}) {
        const CoverInstance ci = instance_of(order);
        const SimplificationInstance si = build_dcs_instance(ci, Rational(0));
        std::vector<Segment> segs;
        for (const auto& ls : ci.segments) segs.push_back(ls.seg);
        CHECK(directed_hausdorff_leq(si.input.links(), segs, Rational(0)));
        CHECK(directed_hausdorff_leq(segs, si.input.links(), Rational(0)));
        const int m = static_cast<int>(ci.segments.size());
        CHECK(static_cast<int>(si.input.vertices.size()) <= 2 * m * (m + 1));

        // The walk uses each arrangement edge at most twice.
        std::map<std::pair<std::string, std::string>, int> uses;
        for (const Segment& link : si.input.links()) {
            std::string a = link.p.str(), b = link.q.str();
            if (b < a) std::swap(a, b);
            CHECK(++uses[{a, b}] <= 2);
        }
    }
}

TEST_CASE("dcs construction guards") {
    CoverInstance disconnected;
    disconnected.k = 2;
    disconnected.segments.push_back({"a", Segment(pt(0, 0), pt(1, 0))});
    disconnected.segments.push_back({"b", Segment(pt(3, 0), pt(4, 1))});
    CHECK_THROWS_AS(build_dcs_instance(disconnected, Rational(0)), std::invalid_argument);

    const CoverInstance ci = instance_of({1, 2, 1, 2});
    CHECK_THROWS_AS(build_dcs_instance(ci, safe_delta(ci)), std::invalid_argument);
    CHECK_NOTHROW(build_dcs_instance(ci, safe_delta_half(ci)));
}

TEST_CASE("zero-delta solver matches the cover solver") {
    const CoverInstance k3 = instance_of({1, 2, 3, 1, 2, 3});
    const SimplificationInstance si3 = build_dcs_instance(k3, Rational(0));
    const auto sol = solve_dcs_zero(si3, k3);
    REQUIRE(sol.has_value());
    CHECK(sol->link_count() == 9);
    CHECK(directed_hausdorff_leq(si3.input, *sol, Rational(0)));

    const CoverInstance nested = instance_of({1, 1, 2, 2});
    const SimplificationInstance sin = build_dcs_instance(nested, Rational(0));
    CHECK_FALSE(solve_dcs_zero(sin, nested).has_value());

    // Mismatched pair is rejected.
    CHECK_THROWS_AS(solve_dcs_zero(si3, nested), std::invalid_argument);
}

TEST_CASE("tolerance bound formula") {
    CHECK(cover_delta_bound(1) == rat(3, 4));
    CHECK(cover_delta_bound(2) == rat(3, 8));
    CHECK(cover_delta_bound(3) == rat(3, 24));
    CHECK(cover_delta_bound(3) == rat(1, 8));

    // Instance-level bound uses the curve point count 2n.
    const CoverInstance two_chords = instance_of({1, 2, 1, 2});
    CHECK(safe_delta(two_chords) == cover_delta_bound(4));
    CHECK(safe_delta(two_chords) == rat(1, 32));
    CHECK(safe_delta_half(two_chords) == rat(1, 64));

    const CoverInstance one_chord = instance_of({1, 1});
    CHECK(safe_delta(one_chord) == cover_delta_bound(2));
    CHECK(safe_delta(one_chord) == rat(3, 8));
}

TEST_CASE("horizontal gap fixed points") {
    // Side-by-side case: a = b-1, c = b+1 gives b^2/(b-1) - 1, minimal 3 at b = 2.
    CHECK(needle_gap_side_by_side(1, 2, 3) == Rational(3));
    for (int b = 2; b <= 6; ++b) {
        const Rational expected = Rational(b) * Rational(b) / Rational(b - 1) - Rational(1);
        CHECK(needle_gap_side_by_side(b - 1, b, b + 1) == expected);
        if (b > 2) CHECK(needle_gap_side_by_side(b - 1, b, b + 1) > Rational(3));
    }

    // Nested case: a = c-1, d = c+1 gives 1 - (c-1)/c^2, minimal 3/4 at c = 2.
    CHECK(needle_gap_nested(1, 2, 3) == rat(3, 4));
    for (int c = 2; c <= 6; ++c) {
        const Rational expected = Rational(1) - Rational(c - 1) / (Rational(c) * Rational(c));
        CHECK(needle_gap_nested(c - 1, c, c + 1) == expected);
        if (c > 2) CHECK(needle_gap_nested(c - 1, c, c + 1) > rat(3, 4));
    }
}

TEST_CASE("cone structure at half the safe bound") {
    for (int n = 1; n <= 3; ++n) {
        for (const ChordDiagram& d : enumerate_diagrams(n)) {
            const CoverInstance ci = instance_of(d.endpoint_order);
            const ConeReport r = check_cone_structure(ci, safe_delta_half(ci));
            CHECK(r.violations == 0);
            CHECK(r.leading_segments_in_tips);
            if (r.min_margin) CHECK(r.min_margin->sign() > 0);
        }
    }
}

TEST_CASE("cone structure detects an oversized delta") {
    // At delta = 3/16 the nested two-chord instance grows a tail-tail
    // intersection (margin -3/2); at half the safe bound it stays clear.
    const CoverInstance ci = instance_of({1, 1, 2, 2});
    const ConeReport bad = check_cone_structure(ci, rat(3, 16));
    CHECK(bad.violations == 1);
    REQUIRE(bad.min_margin.has_value());
    CHECK(*bad.min_margin == rat(-3, 2));
    REQUIRE(bad.pairs.size() == 1);
    CHECK(bad.pairs[0].kind == ConePairCase::SideBySide);

    const ConeReport good = check_cone_structure(ci, safe_delta_half(ci));
    CHECK(good.violations == 0);
    REQUIRE(good.min_margin.has_value());
    CHECK(*good.min_margin == rat(21, 8));
}

TEST_CASE("cone pair classification") {
    const CoverInstance crossing = instance_of({1, 2, 1, 2});
    const ConeReport cr = check_cone_structure(crossing, safe_delta_half(crossing));
    REQUIRE(cr.pairs.size() == 1);
    CHECK(cr.pairs[0].kind == ConePairCase::Crossing);
    CHECK_FALSE(cr.pairs[0].margin.has_value());

    const CoverInstance nested = instance_of({1, 2, 2, 1});
    const ConeReport nr = check_cone_structure(nested, safe_delta_half(nested));
    REQUIRE(nr.pairs.size() == 1);
    CHECK(nr.pairs[0].kind == ConePairCase::Nested);
    REQUIRE(nr.pairs[0].margin.has_value());
    CHECK(nr.pairs[0].margin->sign() > 0);
}

TEST_CASE("nonzero-delta equivalence evidence") {
    const CoverInstance k2 = instance_of({1, 2, 1, 2});
    const EquivalenceReport ek2 = equivalence_nonzero_delta(k2);
    CHECK(ek2.delta == rat(1, 64));
    CHECK(ek2.structure_preserved);
    CHECK(ek2.cover_exists);

    const CoverInstance nested = instance_of({1, 1, 2, 2});
    const EquivalenceReport en = equivalence_nonzero_delta(nested);
    CHECK(en.structure_preserved);
    CHECK_FALSE(en.cover_exists);

    const CoverInstance single = instance_of({1, 1});
    const EquivalenceReport e1 = equivalence_nonzero_delta(single);
    CHECK(e1.structure_preserved);
    CHECK(e1.cones.pairs.empty());
    CHECK(e1.cover_exists);

    const CoverInstance big = instance_of({1, 2, 3, 4, 5, 1, 2, 3, 4, 5});
    CHECK_THROWS_AS(equivalence_nonzero_delta(big), std::invalid_argument);
}
