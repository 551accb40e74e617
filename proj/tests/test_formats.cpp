#include "raycover/pipeline.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace raycover;

namespace {

CoverInstance instance_of(std::vector<int> order, int start = 1) {
    return build_cover_instance(embed(ChordDiagram(std::move(order)), start));
}

}  // namespace

TEST_CASE("diagram round trip") {
    const ChordDiagram d({1, 2, 3, 1, 2, 3});
    CHECK(diagram_to_string(d) == "1 2 3 1 2 3\n");
    CHECK(parse_diagram(diagram_to_string(d)).endpoint_order == d.endpoint_order);
    CHECK_THROWS_AS(parse_diagram("1 2 1"), std::invalid_argument);
}

TEST_CASE("graph round trip") {
    Graph g(4);
    g.add_edge(1, 3);
    g.add_edge(2, 4);
    g.add_edge(1, 2);
    const Graph back = parse_graph(graph_to_string(g));
    CHECK(back == g);
    CHECK_THROWS_AS(parse_graph("nonsense"), std::invalid_argument);
}

TEST_CASE("embedding round trip") {
    std::mt19937_64 rng(616);
    for (int n = 1; n <= 5; ++n) {
        std::vector<int> order;
        for (int c = 1; c <= n; ++c) {
            order.push_back(c);
            order.push_back(c);
        }
        for (int trial = 0; trial < 10; ++trial) {
            std::shuffle(order.begin(), order.end(), rng);
            const RayEmbedding e = embed(ChordDiagram(order), 1 + (trial % (2 * n)));
            const RayEmbedding back = parse_embedding(embedding_to_string(e));
            REQUIRE(back.chord_count() == e.chord_count());
            for (int i = 0; i < e.chord_count(); ++i) {
                CHECK(back.rays[i].origin == e.rays[i].origin);
                CHECK(back.rays[i].dir == e.rays[i].dir);
            }
            CHECK(back.positions == e.positions);
        }
    }
    CHECK_THROWS_AS(parse_embedding("1: origin=(1, 2) dir=(1, 1)"), std::invalid_argument);
}

TEST_CASE("cover instance round trip keeps metadata") {
    for (const auto& order :
         std::vector<std::vector<int>>{{1, 1}, {1, 2, 1, 2}, {1, 2, 3, 1, 3, 2}}) {
        const CoverInstance ci = instance_of(order);
        const CoverInstance back = parse_cover(cover_to_string(ci));
        REQUIRE(back.segments.size() == ci.segments.size());
        for (std::size_t i = 0; i < ci.segments.size(); ++i) {
            CHECK(back.segments[i].label == ci.segments[i].label);
            CHECK(back.segments[i].seg == ci.segments[i].seg);
        }
        CHECK(back.k == ci.k);
        CHECK(back.y_min == ci.y_min);
        CHECK(back.y_low == ci.y_low);
        CHECK(back.epsilon == ci.epsilon);
        CHECK(back.point_count == ci.point_count);
        REQUIRE(back.needles.size() == ci.needles.size());
        for (std::size_t i = 0; i < ci.needles.size(); ++i) {
            CHECK(back.needles[i].chord == ci.needles[i].chord);
            CHECK(back.needles[i].a == ci.needles[i].a);
            CHECK(back.needles[i].b == ci.needles[i].b);
            CHECK(back.needles[i].apex == ci.needles[i].apex);
            CHECK(back.needles[i].origin == ci.needles[i].origin);
            CHECK(back.needles[i].left_index == ci.needles[i].left_index);
            CHECK(back.needles[i].right_index == ci.needles[i].right_index);
        }
        // The reparsed instance is fully usable.
        CHECK(validate_epsilon(back));
        CHECK(solve_cover(back).has_value() == solve_cover(ci).has_value());
    }
}

TEST_CASE("simplification and witness round trips") {
    const CoverInstance ci = instance_of({1, 2, 1, 2});
    const SimplificationInstance si = build_dcs_instance(ci, Rational(0));
    const SimplificationInstance back = parse_simplification(simplification_to_string(si));
    CHECK(back.k == si.k);
    CHECK(back.delta == si.delta);
    CHECK(back.input.vertices == si.input.vertices);

    const auto w = solve_cover(ci);
    REQUIRE(w.has_value());
    const CoverWitness wb = parse_witness(witness_to_string(*w));
    CHECK(wb.polyline.vertices == w->polyline.vertices);
    CHECK(wb.assignment == w->assignment);

    const SimplificationInstance nz = build_dcs_instance(ci, safe_delta_half(ci));
    const SimplificationInstance nzb = parse_simplification(simplification_to_string(nz));
    CHECK(nzb.delta == rat(1, 64));
}

TEST_CASE("svg rendering") {
    const RayEmbedding k3 = embed(ChordDiagram({1, 2, 3, 1, 2, 3}), 1);
    const std::string svg = render_embedding_svg(k3);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    // Three rays and three pairwise intersection markers.
    std::size_t rays = 0, pos = 0;
    while ((pos = svg.find("<title>ray ", pos)) != std::string::npos) {
        ++rays;
        pos += 1;
    }
    CHECK(rays == 3);
    std::size_t marks = 0;
    pos = 0;
    while ((pos = svg.find("<title>rays ", pos)) != std::string::npos) {
        ++marks;
        pos += 1;
    }
    CHECK(marks == 3);

    const std::string empty_svg = render_embedding_svg(RayEmbedding{});
    CHECK(empty_svg.rfind("<svg", 0) == 0);
    CHECK(empty_svg.find("</svg>") != std::string::npos);

    const CoverInstance ci = instance_of({1, 2, 1, 2});
    const auto w = solve_cover(ci);
    REQUIRE(w.has_value());
    const std::string cover_svg = render_cover_svg(ci, &*w);
    CHECK(cover_svg.find("polyline") != std::string::npos);
    CHECK(cover_svg.find("s_h") != std::string::npos);
    // Per-link bend markers are labeled.
    CHECK(cover_svg.find("<title>bend 0") != std::string::npos);

    // Rendering is deterministic.
    CHECK(render_cover_svg(ci, &*w) == cover_svg);
    CHECK(render_embedding_svg(k3) == svg);
}

TEST_CASE("pipeline runs are reproducible and internally consistent") {
    const ChordDiagram k3({1, 2, 3, 1, 2, 3});
    const PipelineRun a = run_pipeline(k3, 1);
    const PipelineRun b = run_pipeline(k3, 1);
    CHECK(a.consistent);
    CHECK(a.verdict_exists);
    CHECK(a.report == b.report);
    REQUIRE(a.files.size() == b.files.size());
    for (const auto& [name, content] : a.files) {
        REQUIRE(b.files.count(name) == 1);
        CHECK(b.files.at(name) == content);
    }
    // The hash chain links consecutive stages.
    REQUIRE(a.stages.size() >= 5);
    for (std::size_t i = 1; i < a.stages.size(); ++i)
        CHECK(a.stages[i].input_hash == a.stages[i - 1].output_hash);

    const PipelineRun none = run_pipeline(ChordDiagram({1, 1, 2, 2}), 1);
    CHECK(none.consistent);
    CHECK_FALSE(none.verdict_exists);
    CHECK(none.files.count("witness.txt") == 0);
}

TEST_CASE("hash helper") {
    CHECK(hash_hex("") == "cbf29ce484222325");
    CHECK(hash_hex("a") != hash_hex("b"));
}
