#include <atomic>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "rcn/rcn.hpp"

using namespace rcn;

namespace {

enum Exit { ok = 0, violation = 1, invalid_input = 2, internal_failure = 3 };

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text)
{
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

template <class F>
auto as_input(const std::string& what, F&& f)
{
    try {
        return f();
    } catch (const TamperError&) {
        throw;
    } catch (const FormatError& e) {
        throw InputError(what + ": " + e.what());
    }
}

// --------------------------------------------------------------- generate

struct GenerateArgs {
    std::string family;
    std::size_t n = 30;
    std::size_t k = 3;
    double keep = 0.7;
    std::size_t delta = 8;
    std::size_t pieces = 6;
    std::string out = "-";
    std::string td_out;
    std::string decomposition_out;
};

int run_generate(const GenerateArgs& a, std::uint64_t seed)
{
    Graph g;
    std::optional<TreeDecomposition> td;
    std::optional<CliqueSumDecomposition> d;
    try {
        if (a.family == "k-tree") {
            auto r = gen_k_tree(a.n, a.k, seed);
            g = r.graph, td = r.td;
        } else if (a.family == "partial-k-tree") {
            auto r = gen_partial_k_tree(a.n, a.k, a.keep, seed);
            g = r.graph, td = r.td;
        } else if (a.family == "triangulation") {
            g = gen_triangulation(a.n, seed, false);
        } else if (a.family == "triangulation-clean") {
            g = gen_triangulation(a.n, seed, true);
        } else if (a.family == "disjoint-k33") {
            g = gen_disjoint_k33(a.n);
        } else if (a.family == "thickened-k33") {
            g = gen_thickened_k33(a.n, a.delta);
        } else if (a.family == "cliquesum") {
            auto r = gen_cliquesum_decomposition(a.pieces, a.n, seed);
            g = r.graph, d = r.decomposition;
        } else {
            throw InputError("unknown family '" + a.family + "'");
        }
    } catch (const GeneratorError& e) {
        throw InputError(e.what());
    }
    NameTable names = NameTable::numbered(g.vertices());
    write_file(a.out, emit_graph(g, names));
    if (!a.td_out.empty()) {
        if (!td) throw InputError("family '" + a.family + "' has no tree decomposition");
        write_file(a.td_out, emit_td(*td, g.vertex_count()));
    }
    if (!a.decomposition_out.empty()) {
        if (!d) throw InputError("family '" + a.family + "' has no clique-sum decomposition");
        write_file(a.decomposition_out, emit_decomposition(*d, names));
    }
    return ok;
}

// -------------------------------------------------------------- decompose

int run_decompose(const std::string& graph_path, const std::string& out, bool check)
{
    NamedGraph g = as_input(graph_path, [&] { return parse_graph(read_file(graph_path)); });
    CliqueSumDecomposition d = decompose(g.graph);
    if (check) {
        auto problems = structural_violations(d);
        if (problems.empty() && !(reconstruct(d) == g.graph)) problems.push_back("reconstruction differs from the graph");
        if (!problems.empty()) throw std::logic_error("decompose produced an invalid decomposition: " + problems.front());
    }
    write_file(out, emit_decomposition(d, g.names));
    std::cerr << d.pieces.size() << " pieces, adhesion " << d.adhesion() << '\n';
    return ok;
}

// ------------------------------------------------------------------- draw

struct DrawArgs {
    std::string graph;
    std::string td;
    std::string decomposition;
    std::size_t k = 0;
    std::size_t t = 0;
    bool check = false;
    std::string out;
    std::string svg;
    std::string report;
};

BoundReport planar_report(const Graph& g, const Drawing& d)
{
    BoundReport r;
    r.formula = "0 (planar)";
    r.vertices = g.vertex_count();
    r.edges = g.edge_count();
    r.delta = g.max_degree();
    CrossingReport c = count_crossings(d);
    r.observed = c.total;
    r.max_per_edge = c.max_per_edge();
    if (r.observed > 0) r.violations.push_back("planar drawing has crossings");
    return r;
}

int run_draw(const DrawArgs& a, std::uint64_t seed)
{
    NamedGraph g = as_input(a.graph, [&] { return parse_graph(read_file(a.graph)); });
    if (!a.td.empty() && !a.decomposition.empty()) throw InputError("give at most one of --td and --decomposition");
    Drawing drawing;
    BoundReport report;
    if (!a.td.empty()) {
        TreeDecomposition td = as_input(a.td, [&] { return parse_td(read_file(a.td), &g.graph); });
        if (a.k && static_cast<long>(a.k) < td.width())
            throw InputError("--k " + std::to_string(a.k) + " is below the decomposition width");
        ComposeResult r = draw_treewidth(g.graph, td, seed, a.k);
        drawing = std::move(r.drawing), report = std::move(r.report);
    } else if (!a.decomposition.empty()) {
        CliqueSumDecomposition d =
            as_input(a.decomposition, [&] { return parse_decomposition(read_file(a.decomposition), g.names); });
        std::size_t t = std::max<std::size_t>(3, a.t);
        for (const Piece& p : d.pieces)
            if (p.kind.tag == PieceKindTag::Treewidth) {
                if (a.t && p.kind.treewidth > a.t) throw InputError("--t is below a piece's treewidth tag");
                t = std::max(t, p.kind.treewidth);
            }
        auto rep = validate_decomposition(d, g.graph, 3, t);
        if (!rep.ok()) throw InputError(a.decomposition + ": " + rep.violations.front());
        ComposeResult r = draw_single_crossing_free(g.graph, d, seed, t);
        drawing = std::move(r.drawing), report = std::move(r.report);
    } else if (is_planar(g.graph)) {
        drawing = fary_draw(g.graph, seed);
        report = planar_report(g.graph, drawing);
    } else {
        TreeDecomposition td = greedy_tree_decomposition(g.graph);
        ComposeResult r = draw_treewidth(g.graph, td, seed, a.k);
        drawing = std::move(r.drawing), report = std::move(r.report);
        report.notes.push_back("tree decomposition from the min-fill heuristic");
    }
    std::string text = emit_drawing(drawing, g.names);
    if (a.check) parse_drawing(text);
    if (!a.out.empty()) write_file(a.out, text);
    if (!a.svg.empty()) {
        SvgOptions opt;
        opt.names = &g.names;
        write_file(a.svg, render_svg(drawing, opt));
    }
    if (!a.report.empty()) write_file(a.report, report_json(report));
    std::cout << "vertices " << report.vertices << " edges " << report.edges << " delta " << report.delta
              << " crossings " << report.observed << " bound " << report.bound << " (" << report.formula << ")\n";
    for (const std::string& v : report.violations) std::cerr << "violation: " << v << '\n';
    return report.ok() ? ok : violation;
}

// ------------------------------------------------------- count and verify

/// Runs f on every index, on up to jobs threads; results keep input order.
template <class F>
std::vector<std::string> parallel_map(std::size_t count, std::size_t jobs, F f)
{
    std::vector<std::string> out(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < count;) {
            try {
                out[i] = f(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t j = 1; j < std::min(jobs, count); ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

int run_count(const std::vector<std::string>& files, std::size_t jobs)
{
    auto lines = parallel_map(files.size(), jobs, [&](std::size_t i) {
        DrawingFile f = as_input(files[i], [&] { return parse_drawing(read_file(files[i])); });
        return std::to_string(count_crossings(f.drawing).total);
    });
    for (std::size_t i = 0; i < files.size(); ++i)
        std::cout << (files.size() > 1 ? files[i] + " " : "") << lines[i] << '\n';
    return ok;
}

struct VerifyArgs {
    std::vector<std::string> drawings;
    std::string graph;
    std::string td;
    std::string decomposition;
};

int run_verify(const VerifyArgs& a, std::size_t jobs)
{
    std::optional<NamedGraph> g;
    std::optional<std::uint64_t> bound;
    std::string formula;
    if (!a.graph.empty()) {
        g = as_input(a.graph, [&] { return parse_graph(read_file(a.graph)); });
        std::uint64_t delta = g->graph.max_degree(), m = g->graph.edge_count();
        if (!a.td.empty()) {
            TreeDecomposition td = as_input(a.td, [&] { return parse_td(read_file(a.td), &g->graph); });
            std::uint64_t k = static_cast<std::uint64_t>(std::max<long>(td.width(), 1));
            bound = k * (k + 2) * delta * m;
            formula = "k(k+2) Delta ||G||, k = " + std::to_string(k);
        } else if (!a.decomposition.empty()) {
            CliqueSumDecomposition d =
                as_input(a.decomposition, [&] { return parse_decomposition(read_file(a.decomposition), g->names); });
            std::uint64_t t = 3;
            for (const Piece& p : d.pieces)
                if (p.kind.tag == PieceKindTag::Treewidth) t = std::max<std::uint64_t>(t, p.kind.treewidth);
            auto rep = validate_decomposition(d, g->graph, 3, t);
            if (!rep.ok()) throw InputError(a.decomposition + ": " + rep.violations.front());
            bound = 3 * (t * t + 2 * t + 2) * delta * m;
            formula = "3(t^2+2t+2) Delta ||G||, t = " + std::to_string(t);
        } else if (is_planar(g->graph)) {
            bound = 0;
            formula = "planar";
        }
    } else if (!a.td.empty() || !a.decomposition.empty()) {
        throw InputError("--td and --decomposition need --graph");
    }

    std::atomic<bool> failed{false};
    auto lines = parallel_map(a.drawings.size(), jobs, [&](std::size_t i) -> std::string {
        const std::string& path = a.drawings[i];
        DrawingFile f;
        try {
            f = as_input(path, [&] { return parse_drawing(read_file(path)); });
        } catch (const TamperError& e) {
            failed = true;
            return path + ": TAMPERED " + e.what();
        }
        std::uint64_t total = count_crossings(f.drawing).total;
        std::string line = path + ": " + std::to_string(total) + " crossings";
        if (g) {
            bool same = f.drawing.graph.vertex_count() == g->graph.vertex_count();
            Graph drawn;
            for (VertexId v : f.drawing.graph.vertices()) {
                auto gv = g->names.find(f.names.name(v));
                if (!gv) {
                    same = false;
                    break;
                }
                drawn.add_vertex(*gv);
            }
            if (same)
                for (const auto& [e, p] : f.drawing.graph.edges())
                    drawn.ensure_edge(*g->names.find(f.names.name(p.first)), *g->names.find(f.names.name(p.second)));
            if (!same || !(drawn == g->graph) || f.drawing.graph.edge_count() != g->graph.edge_count()) {
                failed = true;
                return line + ", graph differs from " + a.graph;
            }
            if (bound) {
                line += ", bound " + std::to_string(*bound) + " (" + formula + ")";
                if (total > *bound) {
                    failed = true;
                    return line + " VIOLATED";
                }
            }
        }
        return line + ", ok";
    });
    for (const std::string& l : lines) std::cout << l << '\n';
    return failed ? violation : ok;
}

// ----------------------------------------------------------------- render

int run_render(const std::string& drawing_path, const std::string& svg, bool markers, bool labels)
{
    DrawingFile f = as_input(drawing_path, [&] { return parse_drawing(read_file(drawing_path)); });
    SvgOptions opt;
    opt.crossing_markers = markers;
    opt.labels = labels;
    opt.names = &f.names;
    write_file(svg, render_svg(f.drawing, opt));
    return ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Straight-line drawings with certified crossing bounds"};
    app.require_subcommand(1);
    app.fallthrough();
    std::uint64_t seed = 1;
    std::size_t jobs = 1;
    app.add_option("--seed", seed, "random seed")->capture_default_str();
    app.add_option("--jobs", jobs, "worker threads for count and verify")->check(CLI::PositiveNumber);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "write a generated graph");
    generate->add_option("family", gen.family,
                         "k-tree | partial-k-tree | triangulation | triangulation-clean | disjoint-k33 | thickened-k33 | cliquesum")
        ->required();
    generate->add_option("--n", gen.n, "vertices (cliquesum: vertex budget)");
    generate->add_option("--k", gen.k, "k for k-trees");
    generate->add_option("--p", gen.keep, "edge keep probability for partial k-trees");
    generate->add_option("--delta", gen.delta, "maximum degree for thickened K33");
    generate->add_option("--pieces", gen.pieces, "pieces for cliquesum");
    generate->add_option("-o,--out", gen.out, "graph file, - for stdout");
    generate->add_option("--td", gen.td_out, "also write the tree decomposition");
    generate->add_option("--decomposition", gen.decomposition_out, "also write the clique-sum decomposition");

    std::string dec_graph, dec_out = "-";
    bool dec_check = false;
    auto* decomp = app.add_subcommand("decompose", "write a clique-sum decomposition of a graph");
    decomp->add_option("graph", dec_graph)->required();
    decomp->add_option("-o,--out", dec_out);
    decomp->add_flag("--check", dec_check, "validate the result");

    DrawArgs draw;
    auto* drawc = app.add_subcommand("draw", "draw a graph and report its bound");
    drawc->add_option("graph", draw.graph)->required();
    drawc->add_option("--td", draw.td, "PACE tree decomposition");
    drawc->add_option("--decomposition", draw.decomposition, "clique-sum decomposition");
    drawc->add_option("--k", draw.k, "treewidth parameter, at least the width");
    drawc->add_option("--t", draw.t, "treewidth parameter of the single-crossing bound");
    drawc->add_flag("--check", draw.check, "re-verify the emitted drawing");
    drawc->add_option("-o,--out", draw.out, "drawing file");
    drawc->add_option("--svg", draw.svg, "SVG output");
    drawc->add_option("--report", draw.report, "JSON bound report");

    std::vector<std::string> count_files;
    auto* count = app.add_subcommand("count", "count crossing pairs of drawings");
    count->add_option("drawings", count_files)->required();

    VerifyArgs ver;
    auto* verify = app.add_subcommand("verify", "re-verify drawings and their bounds");
    verify->add_option("drawings", ver.drawings)->required();
    verify->add_option("--graph", ver.graph, "graph the drawings must realize");
    verify->add_option("--td", ver.td, "tree decomposition giving k");
    verify->add_option("--decomposition", ver.decomposition, "clique-sum decomposition giving t");

    std::string render_in, render_svg_out;
    bool markers = false, no_labels = false;
    auto* render = app.add_subcommand("render", "render a drawing as SVG");
    render->add_option("drawing", render_in)->required();
    render->add_option("--svg", render_svg_out)->required();
    render->add_flag("--markers", markers, "mark crossings");
    render->add_flag("--no-labels", no_labels);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : invalid_input;
    }

    try {
        if (*generate) return run_generate(gen, seed);
        if (*decomp) return run_decompose(dec_graph, dec_out, dec_check);
        if (*drawc) return run_draw(draw, seed);
        if (*count) return run_count(count_files, jobs);
        if (*verify) return run_verify(ver, jobs);
        if (*render) return run_render(render_in, render_svg_out, markers, !no_labels);
    } catch (const TamperError& e) {
        std::cerr << "tampered: " << e.what() << '\n';
        return violation;
    } catch (const InputError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return invalid_input;
    } catch (const std::exception& e) {
        std::cerr << "internal failure: " << e.what() << '\n';
        return internal_failure;
    }
    return internal_failure;
}
