#pragma once

#include <sstream>

#include "rcn/compose/compose.hpp"

namespace rcn {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parse succeeded but the embedded crossing report disagrees with a recount.
class TamperError : public FormatError {
public:
    using FormatError::FormatError;
};

/// Vertex names in files. Ids are assigned in order of first appearance;
/// vertices without an entry are written as their id plus one.
struct NameTable {
    std::map<VertexId, std::string> names;
    std::map<std::string, VertexId> ids;

    VertexId intern(const std::string& name)
    {
        auto it = ids.find(name);
        if (it != ids.end()) return it->second;
        VertexId v{static_cast<std::uint32_t>(names.size())};
        while (names.contains(v)) v = fresh_vertex_after(v);
        names[v] = name;
        ids[name] = v;
        return v;
    }

    std::optional<VertexId> find(const std::string& name) const
    {
        auto it = ids.find(name);
        if (it == ids.end()) return std::nullopt;
        return it->second;
    }

    std::string name(VertexId v) const
    {
        auto it = names.find(v);
        return it == names.end() ? std::to_string(v.value + 1) : it->second;
    }

    /// Names "1".."n" for ids 0..n-1, matching PACE vertex numbering.
    static NameTable numbered(const std::vector<VertexId>& vertices)
    {
        NameTable t;
        for (VertexId v : vertices) {
            t.names[v] = std::to_string(v.value + 1);
            t.ids[t.names[v]] = v;
        }
        return t;
    }
};

namespace detail {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

/// Non-empty, non-comment lines split on whitespace.
inline std::vector<Line> tokenize(const std::string& text)
{
    std::vector<Line> out;
    std::istringstream in(text);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (toks.empty() || toks[0] == "c") continue;
        out.push_back({n, std::move(toks)});
    }
    return out;
}

[[noreturn]] inline void fail(const Line& l, const std::string& what)
{
    throw FormatError("line " + std::to_string(l.number) + ": " + what);
}

inline std::size_t to_count(const Line& l, const std::string& s)
{
    if (s.empty() || s.size() > 18 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        fail(l, "expected a non-negative integer, got '" + s + "'");
    return static_cast<std::size_t>(std::stoull(s));
}

inline std::string rational_token(const Rational& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

/// Accepts only "num/den" in lowest terms with a positive denominator.
inline Rational to_rational(const Line& l, const std::string& s)
{
    auto slash = s.find('/');
    if (slash == std::string::npos) fail(l, "rational '" + s + "' must be written num/den");
    Rational q;
    if (q.set_str(s, 10) != 0) fail(l, "malformed rational '" + s + "'");
    if (q.get_den() == 0) fail(l, "zero denominator in '" + s + "'");
    Rational c = q;
    c.canonicalize();
    if (rational_token(c) != s) fail(l, "non-canonical rational '" + s + "' (expected '" + rational_token(c) + "')");
    return c;
}

inline void expect_arity(const Line& l, std::size_t n)
{
    if (l.tokens.size() != n) fail(l, "expected " + std::to_string(n) + " fields");
}

} // namespace detail

// ---------------------------------------------------------------- graphs

struct NamedGraph {
    Graph graph;
    NameTable names;
};

/// Edge list: "p <n> <m>", optional "v <name>" declarations, then "u v" lines.
inline NamedGraph parse_graph(const std::string& text)
{
    NamedGraph out;
    auto lines = detail::tokenize(text);
    if (lines.empty() || lines[0].tokens[0] != "p") throw FormatError("missing 'p <n> <m>' header");
    const auto& h = lines[0];
    detail::expect_arity(h, 3);
    std::size_t n = detail::to_count(h, h.tokens[1]);
    std::size_t m = detail::to_count(h, h.tokens[2]);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        if (l.tokens[0] == "v") {
            detail::expect_arity(l, 2);
            if (out.names.find(l.tokens[1])) detail::fail(l, "vertex '" + l.tokens[1] + "' declared twice");
            out.graph.add_vertex(out.names.intern(l.tokens[1]));
            continue;
        }
        if (l.tokens[0] == "p") detail::fail(l, "second header");
        detail::expect_arity(l, 2);
        if (l.tokens[0] == l.tokens[1]) detail::fail(l, "self-loop at '" + l.tokens[0] + "'");
        VertexId a = out.names.intern(l.tokens[0]);
        VertexId b = out.names.intern(l.tokens[1]);
        if (out.graph.has_vertex(a) && out.graph.has_vertex(b) && out.graph.has_edge(a, b))
            detail::fail(l, "duplicate edge " + l.tokens[0] + " " + l.tokens[1]);
        out.graph.add_edge(a, b);
    }
    if (out.graph.vertex_count() != n)
        throw FormatError("header declares " + std::to_string(n) + " vertices, found " +
                          std::to_string(out.graph.vertex_count()));
    if (out.graph.edge_count() != m)
        throw FormatError("header declares " + std::to_string(m) + " edges, found " + std::to_string(out.graph.edge_count()));
    return out;
}

inline std::string emit_graph(const Graph& g, const NameTable& names)
{
    std::ostringstream out;
    out << "p " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (VertexId v : g.vertices()) out << "v " << names.name(v) << '\n';
    for (const VertexPair& e : g.edges()) out << names.name(e.first) << ' ' << names.name(e.second) << '\n';
    return out.str();
}

inline std::string emit_graph(const NamedGraph& g) { return emit_graph(g.graph, g.names); }

// ------------------------------------------------------- tree decompositions

/// PACE .td: "s td <bags> <width+1> <n>", "b <id> <vertices>", tree edges
/// "<a> <b>". Vertex i is the graph vertex with id i-1; bag ids are kept.
inline TreeDecomposition parse_td(const std::string& text, const Graph* g = nullptr)
{
    auto lines = detail::tokenize(text);
    if (lines.empty() || lines[0].tokens[0] != "s" || lines[0].tokens.size() < 2 || lines[0].tokens[1] != "td")
        throw FormatError("missing 's td <bags> <width+1> <n>' header");
    const auto& h = lines[0];
    detail::expect_arity(h, 5);
    std::size_t bags = detail::to_count(h, h.tokens[2]);
    std::size_t size = detail::to_count(h, h.tokens[3]);
    std::size_t n = detail::to_count(h, h.tokens[4]);
    TreeDecomposition td;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        if (l.tokens[0] == "b") {
            if (l.tokens.size() < 2) detail::fail(l, "bag line without id");
            std::size_t id = detail::to_count(l, l.tokens[1]);
            if (id < 1 || id > bags) detail::fail(l, "bag id " + std::to_string(id) + " out of range");
            if (td.bags.contains(id)) detail::fail(l, "bag " + std::to_string(id) + " given twice");
            VertexSet bag;
            for (std::size_t k = 2; k < l.tokens.size(); ++k) {
                std::size_t v = detail::to_count(l, l.tokens[k]);
                if (v < 1 || v > n) detail::fail(l, "vertex " + std::to_string(v) + " out of range");
                bag.insert(VertexId{static_cast<std::uint32_t>(v - 1)});
            }
            td.bags[id] = bag;
            continue;
        }
        detail::expect_arity(l, 2);
        std::size_t a = detail::to_count(l, l.tokens[0]);
        std::size_t b = detail::to_count(l, l.tokens[1]);
        if (a < 1 || a > bags || b < 1 || b > bags) detail::fail(l, "tree edge names a bag out of range");
        td.tree_edges.emplace_back(a, b);
    }
    if (td.bags.size() != bags)
        throw FormatError("header declares " + std::to_string(bags) + " bags, found " + std::to_string(td.bags.size()));
    if (static_cast<long>(size) != td.width() + 1)
        throw FormatError("header declares largest bag " + std::to_string(size) + ", found " +
                          std::to_string(td.width() + 1));
    if (g) {
        if (g->vertex_count() != n) throw FormatError("decomposition is for " + std::to_string(n) + " vertices");
        auto rep = validate_tree_decomposition(*g, td);
        if (!rep.ok()) throw FormatError("invalid tree decomposition: " + rep.violations.front());
    }
    return td;
}

/// Bags are renumbered 1..B in id order, as the format requires.
inline std::string emit_td(const TreeDecomposition& td, std::size_t n)
{
    std::map<std::size_t, std::size_t> renum;
    for (const auto& [id, bag] : td.bags) renum.emplace(id, renum.size() + 1);
    std::ostringstream out;
    out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << n << '\n';
    for (const auto& [id, bag] : td.bags) {
        out << "b " << renum.at(id);
        for (VertexId v : bag) out << ' ' << v.value + 1;
        out << '\n';
    }
    for (auto [a, b] : td.tree_edges) out << renum.at(a) << ' ' << renum.at(b) << '\n';
    return out.str();
}

// ---------------------------------------------------------- decompositions

inline std::string kind_token(const PieceKind& k)
{
    switch (k.tag) {
    case PieceKindTag::Planar: return "planar";
    case PieceKindTag::PlanarNoSepTriangle: return "planar-nosep";
    case PieceKindTag::Complete: return "complete";
    case PieceKindTag::Treewidth: return "treewidth " + std::to_string(k.treewidth);
    case PieceKindTag::Generic: return "generic";
    }
    return "generic";
}

/// Text form, one record per line:
///   p decomposition <pieces>
///   piece <i> <kind> [<t>]        kinds: planar planar-nosep complete treewidth generic
///   parent <j>                    absent for roots
///   clique <names>                join clique
///   delete <u> <v>                clique edge removed at the join
///   vertices <names>
///   edge <u> <v>
///   bag <id> <names>              optional width certificate
///   link <a> <b>
/// Pieces are numbered from 1.
inline CliqueSumDecomposition parse_decomposition(const std::string& text, NameTable& names)
{
    auto lines = detail::tokenize(text);
    if (lines.empty() || lines[0].tokens[0] != "p" || lines[0].tokens.size() != 3 || lines[0].tokens[1] != "decomposition")
        throw FormatError("missing 'p decomposition <pieces>' header");
    std::size_t h = detail::to_count(lines[0], lines[0].tokens[2]);
    CliqueSumDecomposition d;
    auto where = [&](const detail::Line&) { return "piece " + std::to_string(d.pieces.size()) + ": "; };
    auto name_of = [&](const detail::Line&, const std::string& s) { return names.intern(s); };
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        const std::string& key = l.tokens[0];
        if (key == "piece") {
            if (l.tokens.size() < 3) detail::fail(l, "piece line needs an index and a kind");
            std::size_t idx = detail::to_count(l, l.tokens[1]);
            if (idx != d.pieces.size() + 1) detail::fail(l, "pieces must be numbered 1, 2, ... in order");
            Piece p;
            const std::string& kind = l.tokens[2];
            if (kind == "treewidth") {
                detail::expect_arity(l, 4);
                p.kind = PieceKind::bounded_treewidth(detail::to_count(l, l.tokens[3]));
            } else {
                detail::expect_arity(l, 3);
                if (kind == "planar") p.kind = PieceKind::planar();
                else if (kind == "planar-nosep") p.kind = PieceKind::planar_clean();
                else if (kind == "complete") p.kind = PieceKind::complete();
                else if (kind == "generic") p.kind = PieceKind::generic();
                else detail::fail(l, "unknown kind tag '" + kind + "'");
            }
            d.pieces.push_back(std::move(p));
            continue;
        }
        if (d.pieces.empty()) detail::fail(l, "'" + key + "' before the first piece");
        Piece& p = d.pieces.back();
        if (key == "parent") {
            detail::expect_arity(l, 2);
            std::size_t j = detail::to_count(l, l.tokens[1]);
            if (j < 1 || j >= d.pieces.size()) detail::fail(l, where(l) + "parent must be an earlier piece");
            p.parent = j - 1;
        } else if (key == "clique") {
            for (std::size_t k = 1; k < l.tokens.size(); ++k) p.parent_clique.insert(name_of(l, l.tokens[k]));
        } else if (key == "delete") {
            detail::expect_arity(l, 3);
            VertexId a = name_of(l, l.tokens[1]), b = name_of(l, l.tokens[2]);
            if (a == b) detail::fail(l, where(l) + "deletion of a self-loop");
            p.deletions.emplace(a, b);
        } else if (key == "vertices") {
            for (std::size_t k = 1; k < l.tokens.size(); ++k) p.graph.add_vertex(name_of(l, l.tokens[k]));
        } else if (key == "edge") {
            detail::expect_arity(l, 3);
            VertexId a = name_of(l, l.tokens[1]), b = name_of(l, l.tokens[2]);
            if (a == b) detail::fail(l, where(l) + "self-loop");
            if (p.graph.has_vertex(a) && p.graph.has_vertex(b) && p.graph.has_edge(a, b))
                detail::fail(l, where(l) + "duplicate edge");
            p.graph.add_edge(a, b);
        } else if (key == "bag") {
            if (l.tokens.size() < 2) detail::fail(l, "bag line without id");
            if (!p.certificate) p.certificate = TreeDecomposition{};
            std::size_t id = detail::to_count(l, l.tokens[1]);
            VertexSet bag;
            for (std::size_t k = 2; k < l.tokens.size(); ++k) bag.insert(name_of(l, l.tokens[k]));
            p.certificate->bags[id] = bag;
        } else if (key == "link") {
            detail::expect_arity(l, 3);
            if (!p.certificate) detail::fail(l, where(l) + "link before any bag");
            p.certificate->tree_edges.emplace_back(detail::to_count(l, l.tokens[1]), detail::to_count(l, l.tokens[2]));
        } else {
            detail::fail(l, "unknown record '" + key + "'");
        }
    }
    if (d.pieces.size() != h)
        throw FormatError("header declares " + std::to_string(h) + " pieces, found " + std::to_string(d.pieces.size()));
    auto problems = structural_violations(d);
    if (!problems.empty()) throw FormatError(problems.front());
    return d;
}

inline std::string emit_decomposition(const CliqueSumDecomposition& d, const NameTable& names)
{
    std::ostringstream out;
    auto list = [&](const VertexSet& s) {
        for (VertexId v : s) out << ' ' << names.name(v);
    };
    out << "p decomposition " << d.pieces.size() << '\n';
    for (std::size_t i = 0; i < d.pieces.size(); ++i) {
        const Piece& p = d.pieces[i];
        out << "piece " << i + 1 << ' ' << kind_token(p.kind) << '\n';
        if (p.parent) {
            out << "parent " << *p.parent + 1 << '\n';
            out << "clique";
            list(p.parent_clique);
            out << '\n';
            for (const VertexPair& e : p.deletions) out << "delete " << names.name(e.first) << ' ' << names.name(e.second) << '\n';
        }
        out << "vertices";
        auto vs = p.graph.vertices();
        list(VertexSet(vs.begin(), vs.end()));
        out << '\n';
        for (const VertexPair& e : p.graph.edges()) out << "edge " << names.name(e.first) << ' ' << names.name(e.second) << '\n';
        if (p.certificate) {
            for (const auto& [id, bag] : p.certificate->bags) {
                out << "bag " << id;
                list(bag);
                out << '\n';
            }
            for (auto [a, b] : p.certificate->tree_edges) out << "link " << a << ' ' << b << '\n';
        }
    }
    return out.str();
}

// ----------------------------------------------------------------- drawings

struct DrawingFile {
    Drawing drawing;
    NameTable names;
    std::optional<std::uint64_t> claimed_total;
};

/// Exact drawing:
///   p drawing <n> <m>
///   v <name> <x> <y>        rationals num/den in lowest terms
///   e <id> <u> <v>          edge id and endpoints; parallel edges allowed
///   crossings <total>       optional report
///   pair <e> <f>            optional crossing pairs (all of them when present)
/// A present report is recounted and a mismatch raises TamperError.
inline DrawingFile parse_drawing(const std::string& text)
{
    auto lines = detail::tokenize(text);
    if (lines.empty() || lines[0].tokens[0] != "p" || lines[0].tokens.size() != 4 || lines[0].tokens[1] != "drawing")
        throw FormatError("missing 'p drawing <n> <m>' header");
    std::size_t n = detail::to_count(lines[0], lines[0].tokens[2]);
    std::size_t m = detail::to_count(lines[0], lines[0].tokens[3]);
    DrawingFile out;
    std::optional<std::set<EdgePair>> claimed_pairs;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        const std::string& key = l.tokens[0];
        if (key == "v") {
            detail::expect_arity(l, 4);
            if (out.names.find(l.tokens[1])) detail::fail(l, "vertex '" + l.tokens[1] + "' placed twice");
            VertexId v = out.names.intern(l.tokens[1]);
            out.drawing.graph.add_vertex(v);
            out.drawing.position[v] = {detail::to_rational(l, l.tokens[2]), detail::to_rational(l, l.tokens[3])};
        } else if (key == "e") {
            detail::expect_arity(l, 4);
            EdgeId e{static_cast<std::uint32_t>(detail::to_count(l, l.tokens[1]))};
            auto a = out.names.find(l.tokens[2]), b = out.names.find(l.tokens[3]);
            if (!a || !b) detail::fail(l, "edge endpoint without a position");
            if (*a == *b) detail::fail(l, "self-loop");
            if (out.drawing.graph.has_edge(e)) detail::fail(l, "edge id " + l.tokens[1] + " used twice");
            out.drawing.graph.add_edge(e, *a, *b);
        } else if (key == "crossings") {
            detail::expect_arity(l, 2);
            out.claimed_total = detail::to_count(l, l.tokens[1]);
        } else if (key == "pair") {
            detail::expect_arity(l, 3);
            if (!claimed_pairs) claimed_pairs.emplace();
            claimed_pairs->insert(make_edge_pair(EdgeId{static_cast<std::uint32_t>(detail::to_count(l, l.tokens[1]))},
                                                 EdgeId{static_cast<std::uint32_t>(detail::to_count(l, l.tokens[2]))}));
        } else {
            detail::fail(l, "unknown record '" + key + "'");
        }
    }
    if (out.drawing.graph.vertex_count() != n)
        throw FormatError("header declares " + std::to_string(n) + " vertices, found " +
                          std::to_string(out.drawing.graph.vertex_count()));
    if (out.drawing.graph.edge_count() != m)
        throw FormatError("header declares " + std::to_string(m) + " edges, found " +
                          std::to_string(out.drawing.graph.edge_count()));
    auto problems = drawing_violations(out.drawing);
    if (!problems.empty()) throw FormatError(problems.front());
    if (out.claimed_total || claimed_pairs) {
        CrossingReport r = count_crossings(out.drawing);
        if (out.claimed_total && *out.claimed_total != r.total)
            throw TamperError("report claims " + std::to_string(*out.claimed_total) + " crossings, recount gives " +
                              std::to_string(r.total));
        if (claimed_pairs && *claimed_pairs != r.pairs) throw TamperError("reported crossing pairs differ from the recount");
    }
    return out;
}

inline std::string emit_drawing(const Drawing& d, const NameTable& names, bool with_report = true)
{
    std::ostringstream out;
    out << "p drawing " << d.graph.vertex_count() << ' ' << d.graph.edge_count() << '\n';
    for (VertexId v : d.graph.vertices()) {
        const Point& p = d.at(v);
        out << "v " << names.name(v) << ' ' << detail::rational_token(p.x) << ' ' << detail::rational_token(p.y) << '\n';
    }
    for (const auto& [e, p] : d.graph.edges())
        out << "e " << e.value << ' ' << names.name(p.first) << ' ' << names.name(p.second) << '\n';
    if (with_report) {
        CrossingReport r = count_crossings(d);
        out << "crossings " << r.total << '\n';
        for (const EdgePair& p : r.pairs) out << "pair " << p.first.value << ' ' << p.second.value << '\n';
    }
    return out.str();
}

} // namespace rcn
