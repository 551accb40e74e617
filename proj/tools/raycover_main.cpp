// Command-line front end for the reduction pipeline: embedding circle graphs
// as grounded rays, building segment-cover and curve-simplification
// instances, running the exact solvers and verifiers, and rendering figures.
//
// Exit status: 0 = success / witness found, 1 = proven none / check failed,
// 2 = input error.

#include "raycover/pipeline.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace raycover;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    out << content;
}

ChordDiagram diagram_from(const std::string& diagram_str, const std::string& diagram_file) {
    if (!diagram_str.empty()) return parse_diagram(diagram_str);
    if (!diagram_file.empty()) return parse_diagram(read_file(diagram_file));
    throw std::invalid_argument("need --diagram");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"circle-graph -> ray -> segment-cover -> curve-simplification toolkit"};
    app.require_subcommand(1);

    std::string diagram_str, diagram_file, embedding_file, cover_file, witness_file;
    std::string p_file, q_file, out_path, delta_str;
    int start = 1, threads = 1, max_n = 12, bound_n = 0, k_override = -1;

    auto* c_embed = app.add_subcommand("embed", "embed a chord diagram as grounded rays");
    c_embed->add_option("--diagram", diagram_str, "chord labels, e.g. \"1 2 1 2\"");
    c_embed->add_option("--in", diagram_file, "diagram file");
    c_embed->add_option("--start", start, "start position (1-based)");
    c_embed->add_option("--max-n", max_n, "largest accepted chord count");
    c_embed->add_option("--out", out_path, "output file (default stdout)");

    auto* c_rcover = app.add_subcommand("reduce-cover", "build the segment-cover instance");
    c_rcover->add_option("--diagram", diagram_str, "chord labels");
    c_rcover->add_option("--in", diagram_file, "diagram file");
    c_rcover->add_option("--embedding", embedding_file, "embedding file (instead of a diagram)");
    c_rcover->add_option("--start", start, "start position");
    c_rcover->add_option("--max-n", max_n, "largest accepted chord count");
    c_rcover->add_option("--out", out_path, "output file");

    auto* c_rdcs = app.add_subcommand("reduce-dcs", "build the curve-simplification instance");
    c_rdcs->add_option("--cover", cover_file, "cover instance file")->required();
    c_rdcs->add_option("--delta", delta_str, "tolerance (default 0)");
    c_rdcs->add_option("--out", out_path, "output file");

    auto* c_hp = app.add_subcommand("solve-hp", "exact Hamiltonian path");
    c_hp->add_option("--graph", p_file, "graph file (\"vertices n\" + edge lines)");
    c_hp->add_option("--diagram", diagram_str, "chord labels (uses the circle graph)");

    auto* c_scover = app.add_subcommand("solve-cover", "exact segment-cover search");
    c_scover->add_option("--cover", cover_file, "cover instance file")->required();
    c_scover->add_option("--k", k_override, "override the link budget");
    c_scover->add_option("--out", out_path, "witness output file");

    auto* c_vcover = app.add_subcommand("verify-cover", "check a witness against an instance");
    c_vcover->add_option("--cover", cover_file, "cover instance file")->required();
    c_vcover->add_option("--witness", witness_file, "witness file")->required();

    auto* c_haus = app.add_subcommand("hausdorff", "directed Hausdorff predicate");
    c_haus->add_option("--p", p_file, "polyline P (one \"(x, y)\" per line)")->required();
    c_haus->add_option("--q", q_file, "polyline Q")->required();
    c_haus->add_option("--delta", delta_str, "tolerance")->required();

    auto* c_bound = app.add_subcommand("delta-bound", "tolerance bound 3/(4 n!)");
    c_bound->add_option("--n", bound_n, "curve point count")->required();

    auto* c_cones = app.add_subcommand("check-cones", "tolerance cone margins");
    c_cones->add_option("--cover", cover_file, "cover instance file")->required();
    c_cones->add_option("--delta", delta_str, "tolerance (default: half the safe bound)");

    auto* c_render = app.add_subcommand("render", "SVG figure of a stage output");
    c_render->add_option("--diagram", diagram_str, "chord labels (renders its embedding)");
    c_render->add_option("--start", start, "start position with --diagram");
    c_render->add_option("--embedding", embedding_file, "embedding file");
    c_render->add_option("--cover", cover_file, "cover instance file");
    c_render->add_option("--witness", witness_file, "witness overlay (with --cover)");
    c_render->add_option("--out", out_path, "output file");

    auto* c_pipe = app.add_subcommand("pipeline", "full chain with verdict and evidence");
    c_pipe->add_option("--diagram", diagram_str, "chord labels")->required();
    c_pipe->add_option("--start", start, "start position");
    c_pipe->add_option("--threads", threads, "threads for the enumeration checks");
    c_pipe->add_option("--max-n", max_n, "largest accepted chord count (default 5)");
    c_pipe->add_option("--out", out_path, "output directory for stage files");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_embed->parsed()) {
            const ChordDiagram d = diagram_from(diagram_str, diagram_file);
            if (d.n > max_n) throw std::invalid_argument("diagram larger than --max-n");
            write_output(out_path, embedding_to_string(embed(d, start)));
            return 0;
        }
        if (c_rcover->parsed()) {
            RayEmbedding e;
            if (!embedding_file.empty()) {
                e = parse_embedding(read_file(embedding_file));
            } else {
                const ChordDiagram d = diagram_from(diagram_str, diagram_file);
                if (d.n > max_n) throw std::invalid_argument("diagram larger than --max-n");
                e = embed(d, start);
            }
            write_output(out_path, cover_to_string(build_cover_instance(e)));
            return 0;
        }
        if (c_rdcs->parsed()) {
            const CoverInstance ci = parse_cover(read_file(cover_file));
            const Rational tol = delta_str.empty() ? Rational(0) : Rational::parse(delta_str);
            write_output(out_path, simplification_to_string(build_dcs_instance(ci, tol)));
            return 0;
        }
        if (c_hp->parsed()) {
            Graph g(0);
            if (!p_file.empty())
                g = parse_graph(read_file(p_file));
            else
                g = intersection_graph(diagram_from(diagram_str, diagram_file));
            const auto path = hamiltonian_path(g);
            if (!path) {
                std::cout << "none\n";
                return 1;
            }
            for (std::size_t i = 0; i < path->size(); ++i)
                std::cout << (i ? " " : "") << (*path)[i];
            std::cout << "\n";
            return 0;
        }
        if (c_scover->parsed()) {
            CoverInstance ci = parse_cover(read_file(cover_file));
            if (k_override >= 0) ci.k = k_override;
            const auto w = solve_cover(ci);
            if (!w) {
                std::cout << "none\n";
                return 1;
            }
            write_output(out_path, witness_to_string(*w));
            return 0;
        }
        if (c_vcover->parsed()) {
            const CoverInstance ci = parse_cover(read_file(cover_file));
            const CoverWitness w = parse_witness(read_file(witness_file));
            const bool ok = verify_cover(ci, w.polyline);
            std::cout << (ok ? "valid" : "invalid") << "\n";
            return ok ? 0 : 1;
        }
        if (c_haus->parsed()) {
            const Polyline p = parse_polyline(read_file(p_file));
            const Polyline q = parse_polyline(read_file(q_file));
            const bool ok = directed_hausdorff_leq(p, q, Rational::parse(delta_str));
            std::cout << (ok ? "true" : "false") << "\n";
            return ok ? 0 : 1;
        }
        if (c_bound->parsed()) {
            if (bound_n < 1 || bound_n > 500)
                throw std::invalid_argument("--n must be in [1, 500]");
            std::cout << (Rational(3) / (Rational(4) * Rational(big_factorial(bound_n)))).str()
                      << "\n";
            return 0;
        }
        if (c_cones->parsed()) {
            const CoverInstance ci = parse_cover(read_file(cover_file));
            const Rational tol =
                delta_str.empty() ? safe_delta_half(ci) : Rational::parse(delta_str);
            const ConeReport r = check_cone_structure(ci, tol);
            std::cout << "delta " << r.delta.str() << "\n";
            for (const ConePairReport& pr : r.pairs) {
                std::cout << "pair " << pr.chord_low << " " << pr.chord_high << " "
                          << (pr.kind == ConePairCase::Crossing        ? "crossing"
                              : pr.kind == ConePairCase::SideBySide    ? "side-by-side"
                                                                       : "nested");
                if (pr.margin) std::cout << " margin " << pr.margin->str();
                std::cout << "\n";
            }
            std::cout << "violations " << r.violations << "\n";
            std::cout << "leading-in-tips " << (r.leading_segments_in_tips ? "yes" : "no") << "\n";
            return r.ok() ? 0 : 1;
        }
        if (c_render->parsed()) {
            std::string svg;
            if (!embedding_file.empty()) {
                svg = render_embedding_svg(parse_embedding(read_file(embedding_file)));
            } else if (!cover_file.empty()) {
                const CoverInstance ci = parse_cover(read_file(cover_file));
                std::optional<CoverWitness> w;
                if (!witness_file.empty()) w = parse_witness(read_file(witness_file));
                svg = render_cover_svg(ci, w ? &*w : nullptr);
            } else {
                // --diagram, possibly empty: an empty diagram renders as an
                // empty (but valid) figure.
                svg = render_embedding_svg(
                    embed(ChordDiagram(diagram_str.empty()
                                           ? std::vector<int>{}
                                           : parse_diagram(diagram_str).endpoint_order),
                          start));
            }
            write_output(out_path, svg);
            return 0;
        }
        if (c_pipe->parsed()) {
            const ChordDiagram d = parse_diagram(diagram_str);
            const int pipeline_cap = (max_n == 12) ? 5 : max_n;  // solver handles 2n+3 <= 13
            if (d.n > pipeline_cap) throw std::invalid_argument("diagram larger than --max-n");
            const PipelineRun run = run_pipeline(d, start, threads);
            if (!out_path.empty()) {
                std::filesystem::create_directories(out_path);
                for (const auto& [name, content] : run.files) {
                    std::ofstream out(std::filesystem::path(out_path) / name, std::ios::binary);
                    out << content;
                }
            }
            std::cout << run.report;
            if (!run.consistent) throw std::logic_error("pipeline stages disagree");
            return run.verdict_exists ? 0 : 1;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 2;
}
