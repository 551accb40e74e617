#pragma once

// End-to-end pipeline: diagram -> circle graph -> ray embedding -> cover
// instance -> zero-tolerance simplification instance, with solvers and
// verifiers run at each stage and a tamper-evident hash chain over the
// serialized stage outputs.  Reruns are byte-identical.

#include "raycover/io.hpp"
#include "raycover/ray_embed.hpp"
#include "raycover/svg.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace raycover {

inline std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string hash_hex(const std::string& data) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(data)));
    return std::string(buf);
}

struct PipelineStage {
    std::string name;
    std::string input_hash;   // hash of the previous stage's serialized output
    std::string output_hash;
    std::string output_file;  // file name under the output directory
};

struct PipelineRun {
    ChordDiagram diagram{std::vector<int>{}};
    int start = 1;
    Graph graph{0};
    std::optional<std::vector<int>> ham_path;
    RayEmbedding embedding;
    std::optional<CoverInstance> cover;
    std::optional<SimplificationInstance> dcs;
    std::optional<CoverWitness> witness;
    std::optional<std::vector<int>> extracted_path;
    SubrayReport subray;
    EmbeddingReport grounded;
    std::optional<ConeReport> cones;

    bool verdict_exists = false;   // Hamiltonian path == cover == simplification
    bool consistent = false;       // all stage verdicts agree and verify
    std::vector<PipelineStage> stages;
    std::map<std::string, std::string> files;  // file name -> content
    std::string report;
};

/// Runs the full chain on one diagram.  Every stage output is serialized,
/// hashed against its predecessor, and collected in `files`; `report` is the
/// human-readable summary (also in `files` as report.txt).
inline PipelineRun run_pipeline(const ChordDiagram& d, int start = 1, int threads = 1) {
    PipelineRun run;
    run.diagram = d;
    run.start = start;
    if (d.n < 1) throw std::invalid_argument("pipeline: need at least one chord");

    // Each stage is hashed against the previous stage's serialized output,
    // giving a linear tamper-evident chain over the whole run.
    std::string prev_content;
    auto add_stage = [&run, &prev_content](const std::string& name, const std::string& content,
                                           const std::string& file) {
        run.files[file] = content;
        run.stages.push_back({name,
                              prev_content.empty() ? std::string("-") : hash_hex(prev_content),
                              hash_hex(content), file});
        prev_content = content;
    };

    const std::string diagram_text = diagram_to_string(d);
    add_stage("diagram", diagram_text, "diagram.txt");

    run.graph = intersection_graph(d);
    const std::string graph_text = graph_to_string(run.graph);
    add_stage("graph", graph_text, "graph.txt");
    run.ham_path = hamiltonian_path(run.graph);

    run.embedding = embed(d, start);
    const std::string embedding_text = embedding_to_string(run.embedding);
    add_stage("embedding", embedding_text, "embedding.txt");
    run.grounded = check_grounded_embedding(run.embedding);
    if (d.n >= 2) run.subray = check_subray_disjointness(2 * d.n, threads);

    run.cover = build_cover_instance(run.embedding);
    const std::string cover_text = cover_to_string(*run.cover);
    add_stage("cover", cover_text, "cover.txt");

    run.dcs = build_dcs_instance(*run.cover, Rational(0));
    const std::string dcs_text = simplification_to_string(*run.dcs);
    add_stage("dcs", dcs_text, "dcs.txt");

    run.witness = solve_cover(*run.cover);
    bool witness_ok = true;
    bool extraction_ok = true;
    if (run.witness) {
        witness_ok = verify_cover(*run.cover, run.witness->polyline);
        run.extracted_path = extract_hamiltonian_path(*run.witness, *run.cover);
        for (std::size_t i = 0; extraction_ok && i + 1 < run.extracted_path->size(); ++i)
            extraction_ok =
                run.graph.adjacent((*run.extracted_path)[i], (*run.extracted_path)[i + 1]);
        const std::string witness_text = witness_to_string(*run.witness);
        add_stage("witness", witness_text, "witness.txt");
    }

    const auto dcs_solution = solve_dcs_zero(*run.dcs, *run.cover);
    bool dcs_hausdorff_ok = true;
    if (dcs_solution)
        dcs_hausdorff_ok = directed_hausdorff_leq(run.dcs->input, *dcs_solution, Rational(0));

    if (d.n <= 4) run.cones = check_cone_structure(*run.cover, safe_delta_half(*run.cover));

    run.verdict_exists = run.witness.has_value();
    run.consistent = run.grounded.ok() && run.subray.ok && witness_ok && extraction_ok &&
                     dcs_hausdorff_ok && (run.ham_path.has_value() == run.witness.has_value()) &&
                     (run.witness.has_value() == dcs_solution.has_value()) &&
                     (!run.cones || run.cones->ok());

    run.files["instance.svg"] =
        render_cover_svg(*run.cover, run.witness ? &*run.witness : nullptr);
    run.files["embedding.svg"] = render_embedding_svg(run.embedding);

    std::ostringstream rep;
    rep << "diagram:";
    for (int v : d.endpoint_order) rep << ' ' << v;
    rep << "\nstart: " << start << "\nchords: " << d.n << "\n";
    rep << "hamiltonian_path: ";
    if (run.ham_path) {
        for (std::size_t i = 0; i < run.ham_path->size(); ++i)
            rep << (i ? " " : "") << (*run.ham_path)[i];
    } else {
        rep << "none";
    }
    rep << "\nembedding_checks: " << (run.grounded.ok() ? "pass" : "FAIL")
        << " (max_bits=" << run.grounded.max_bits << ")\n";
    rep << "subray_check: " << (run.subray.ok ? "pass" : "FAIL") << " ("
        << run.subray.quadruples_checked << " quadruples)\n";
    rep << "cover: k=" << run.cover->k << " eps=" << run.cover->epsilon.str() << "\n";
    rep << "cover_witness: ";
    if (run.witness) {
        rep << run.witness->polyline.link_count() << " links, verified "
            << (witness_ok ? "pass" : "FAIL") << ", chord order";
        for (int c : *run.extracted_path) rep << ' ' << c;
    } else {
        rep << "none";
    }
    rep << "\ndcs: k=" << run.dcs->k << " delta=0 vertices=" << run.dcs->input.vertices.size()
        << "\n";
    rep << "dcs_zero: " << (dcs_solution ? "solvable" : "none")
        << (dcs_solution ? (dcs_hausdorff_ok ? " (hausdorff 0 pass)" : " (hausdorff FAIL)") : "")
        << "\n";
    if (run.cones)
        rep << "cones: delta=" << run.cones->delta.str() << " violations="
            << run.cones->violations << "\n";
    rep << "verdict: " << (run.verdict_exists ? "witness-found" : "proven-none") << "\n";
    rep << "consistent: " << (run.consistent ? "yes" : "NO") << "\n";
    rep << "stages:\n";
    for (const PipelineStage& st : run.stages)
        rep << "  " << st.name << " in=" << st.input_hash << " out=" << st.output_hash << " file="
            << st.output_file << "\n";
    run.report = rep.str();
    run.files["report.txt"] = run.report;
    return run;
}

}  // namespace raycover
