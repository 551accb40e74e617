#include "raycover/ray_embed.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace raycover;

TEST_CASE("embedding of the crossing pair") {
    const RayEmbedding e = embed(ChordDiagram({1, 2, 1, 2}), 1);
    REQUIRE(e.chord_count() == 2);
    CHECK(e.positions.at(1) == std::pair<int, int>(1, 3));
    CHECK(e.positions.at(2) == std::pair<int, int>(2, 4));
    CHECK(e.rays[0].origin == (ExactPoint{Rational(1), Rational(1)}));
    CHECK(e.rays[0].dir == (Direction{Rational(2), Rational(5)}));  // toward (3, 6)
    CHECK(e.rays[1].origin == (ExactPoint{Rational(2), Rational(2)}));
    CHECK(e.rays[1].dir == (Direction{Rational(2), Rational(22)}));  // toward (4, 24)

    const auto hit = ray_intersect(e.rays[0], e.rays[1]);
    REQUIRE(hit.kind == Intersection::Kind::Point);
    CHECK(*hit.point == (ExactPoint{rat(37, 17), rat(67, 17)}));
}

TEST_CASE("embedding of the nested pair has no crossing") {
    const RayEmbedding e = embed(ChordDiagram({1, 1, 2, 2}), 1);
    CHECK(e.positions.at(1) == std::pair<int, int>(1, 2));
    CHECK(e.positions.at(2) == std::pair<int, int>(3, 4));
    CHECK(ray_intersect(e.rays[0], e.rays[1]).kind == Intersection::Kind::Empty);
    // The supporting lines do cross, behind the second ray's origin.
    CHECK(line_intersect(e.rays[0], e.rays[1]).kind == Intersection::Kind::Point);
}

TEST_CASE("embedding graph equals the circle graph for all small diagrams and starts") {
    for (int n = 1; n <= 4; ++n) {
        for (const ChordDiagram& d : enumerate_diagrams(n)) {
            const Graph expected = intersection_graph(d);
            for (int start = 1; start <= 2 * n; ++start)
                CHECK(embedding_graph(embed(d, start)) == expected);
        }
    }
}

TEST_CASE("ray intersections happen on the chord segments") {
    // Any ray-ray crossing of an embedding lies on both closed chord
    // segments between the curve points, never on the extensions.
    for (int n = 2; n <= 4; ++n) {
        for (const ChordDiagram& d : enumerate_diagrams(n)) {
            const RayEmbedding e = embed(d, 1);
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    const auto hit = ray_intersect(e.rays[i], e.rays[j]);
                    if (hit.kind != Intersection::Kind::Point) continue;
                    const auto [ai, bi] = e.positions.at(i + 1);
                    const auto [aj, bj] = e.positions.at(j + 1);
                    CHECK(point_on_segment(*hit.point,
                                           Segment(factorial_point(ai), factorial_point(bi))));
                    CHECK(point_on_segment(*hit.point,
                                           Segment(factorial_point(aj), factorial_point(bj))));
                }
            }
        }
    }
}

TEST_CASE("sub-ray disjointness check") {
    const SubrayReport r4 = check_subray_disjointness(4);
    CHECK(r4.ok);
    CHECK_FALSE(r4.first_violation.has_value());

    const SubrayReport r10 = check_subray_disjointness(10);
    CHECK(r10.ok);

    // Threaded run returns the same verdict.
    const SubrayReport r10t = check_subray_disjointness(10, 4);
    CHECK(r10t.ok);
    CHECK(r10t.quadruples_checked == r10.quadruples_checked);

    CHECK_THROWS_AS(check_subray_disjointness(1), std::invalid_argument);
}

TEST_CASE("slope comparison fixed point at b = 3") {
    // Chord through (1, 1) and (3, 6) is steeper than the chord through
    // (1, 1) and (2, 2): 5/2 > 1.
    const Rational slope_a = (factorial_point(3).y - factorial_point(1).y) / Rational(3 - 1);
    const Rational slope_d = (factorial_point(2).y - factorial_point(1).y) / Rational(2 - 1);
    CHECK(slope_a == rat(5, 2));
    CHECK(slope_d == Rational(1));
    CHECK(slope_a > slope_d);
    // Consistent with 2*(b-2)! >= 1/(b-1) at b = 3.
    CHECK(Rational(2) * Rational(big_factorial(1)) >= rat(1, 2));
}

TEST_CASE("grounded embedding checks pass for embeddings") {
    for (int n = 1; n <= 5; ++n) {
        std::mt19937_64 rng(1000 + n);
        std::vector<int> order;
        for (int c = 1; c <= n; ++c) {
            order.push_back(c);
            order.push_back(c);
        }
        for (int trial = 0; trial < 20; ++trial) {
            std::shuffle(order.begin(), order.end(), rng);
            const RayEmbedding e = embed(ChordDiagram(order), 1);
            const EmbeddingReport r = check_grounded_embedding(e);
            CHECK(r.grounded);
            CHECK(r.directions_upright);
            CHECK(r.bits_bounded);
        }
    }
}

TEST_CASE("grounded embedding check flags doctored rays") {
    RayEmbedding e = embed(ChordDiagram({1, 2, 1, 2}), 1);
    e.rays[0] = Ray(ExactPoint{Rational(1), Rational(2)}, e.rays[0].dir);  // off the curve
    CHECK_FALSE(check_grounded_embedding(e).grounded);

    RayEmbedding e2 = embed(ChordDiagram({1, 2, 1, 2}), 1);
    e2.rays[1] = Ray(e2.rays[1].origin, Direction{Rational(-2), Rational(22)});
    CHECK_FALSE(check_grounded_embedding(e2).directions_upright);
}

TEST_CASE("bit complexity values at n = 12") {
    // The largest coordinate of any 12-chord embedding is (24)! with 80 bits,
    // far below the budget 4 * 24 * log2(25) ~ 445.6.
    std::vector<int> order;
    for (int c = 1; c <= 12; ++c) order.push_back(c);
    for (int c = 12; c >= 1; --c) order.push_back(c);  // fully nested diagram
    ChordDiagram d(order);
    // Make chord 1 span positions 1 and 24 so the direction reaches (24)!.
    const RayEmbedding e = embed(d, 1);
    const EmbeddingReport r = check_grounded_embedding(e);
    CHECK(r.bits_bounded);
    CHECK(r.max_bits == 80);
    CHECK(bit_length(big_factorial(24) - big_factorial(1)) == 80);
}

TEST_CASE("embedding is deterministic in diagram and start") {
    const ChordDiagram d({1, 2, 3, 1, 2, 3});
    const RayEmbedding a = embed(d, 4);
    const RayEmbedding b = embed(d, 4);
    REQUIRE(a.chord_count() == b.chord_count());
    for (int i = 0; i < a.chord_count(); ++i) {
        CHECK(a.rays[i].origin == b.rays[i].origin);
        CHECK(a.rays[i].dir == b.rays[i].dir);
    }
    CHECK(a.positions == b.positions);
}
