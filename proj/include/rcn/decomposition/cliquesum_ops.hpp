#pragma once

#include "rcn/decomposition/tree_decomposition_ops.hpp"
#include "rcn/planar/separating.hpp"

namespace rcn {

/// Reorders pieces breadth-first from the roots (roots in index order) so that
/// every parent precedes its children; parent indices are remapped.
inline CliqueSumDecomposition renumber_breadth_first(const CliqueSumDecomposition& d)
{
    std::vector<std::vector<std::size_t>> children(d.pieces.size());
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < d.pieces.size(); ++i) {
        if (d.pieces[i].parent) children[*d.pieces[i].parent].push_back(i);
        else order.push_back(i);
    }
    std::size_t roots = order.size();
    (void)roots;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t c : children[order[i]]) order.push_back(c);
    if (order.size() != d.pieces.size()) throw GraphError("renumber_breadth_first: parent links contain a cycle");
    std::vector<std::size_t> new_index(d.pieces.size());
    for (std::size_t i = 0; i < order.size(); ++i) new_index[order[i]] = i;
    CliqueSumDecomposition out;
    for (std::size_t old : order) {
        Piece p = d.pieces[old];
        if (p.parent) p.parent = new_index[*p.parent];
        out.pieces.push_back(std::move(p));
    }
    return out;
}

/// Splits planar pieces at their lexicographically smallest separating
/// triangle until none has one. The part holding the parent clique keeps the
/// piece's place; the other part becomes a new child joined on the triangle.
/// Child joins follow whichever part contains their clique.
inline CliqueSumDecomposition normalize_planar_pieces(const CliqueSumDecomposition& in)
{
    CliqueSumDecomposition d = in;
    for (std::size_t i = 0; i < d.pieces.size(); ++i) {
        if (!d.pieces[i].kind.is_planar()) continue;
        if (!is_planar(d.pieces[i].graph))
            throw GraphError("normalize_planar_pieces: piece " + std::to_string(i + 1) + " is tagged planar but is not");
    }
    for (std::size_t i = 0; i < d.pieces.size(); ++i) {
        if (!d.pieces[i].kind.is_planar()) continue;
        for (;;) {
            auto sep = find_separating_triangles(d.pieces[i].graph);
            if (sep.empty()) break;
            const Triangle t = sep.front();
            auto [g1, g2] = split_at_separating_triangle(d.pieces[i].graph, t);
            auto inside = [](const Graph& g, const VertexSet& s) {
                for (VertexId v : s)
                    if (!g.has_vertex(v)) return false;
                return true;
            };
            const VertexSet& pc = d.pieces[i].parent_clique;
            bool keep_first = inside(g1, pc);
            Graph keep = keep_first ? g1 : g2;
            Graph other = keep_first ? g2 : g1;
            std::size_t fresh = d.pieces.size();
            Piece child;
            child.graph = other;
            child.kind = d.pieces[i].kind;
            child.parent = i;
            child.parent_clique = VertexSet(t.begin(), t.end());
            for (std::size_t j = 0; j < d.pieces.size(); ++j)
                if (d.pieces[j].parent == i && !inside(keep, d.pieces[j].parent_clique)) d.pieces[j].parent = fresh;
            d.pieces[i].graph = keep;
            d.pieces.push_back(std::move(child));
        }
        d.pieces[i].kind = PieceKind::planar_clean();
    }
    d = renumber_breadth_first(d);
    auto problems = structural_violations(d);
    if (!problems.empty()) throw GraphError("normalize_planar_pieces: " + problems.front());
    return d;
}

struct DecompositionReport {
    std::vector<std::string> violations;
    std::size_t adhesion = 0;
    bool ok() const { return violations.empty(); }
};

/// Checks one piece's kind claim. Treewidth claims accept a valid certificate
/// of small enough width; otherwise exact search is used for t <= 4.
inline std::vector<std::string> piece_kind_violations(const Piece& p, std::size_t index)
{
    std::vector<std::string> out;
    const std::string where = "piece " + std::to_string(index + 1);
    switch (p.kind.tag) {
    case PieceKindTag::Planar:
        if (!is_planar(p.graph)) out.push_back(where + ": tagged planar but not planar");
        break;
    case PieceKindTag::PlanarNoSepTriangle:
        if (!is_planar(p.graph)) out.push_back(where + ": tagged planar but not planar");
        else if (!find_separating_triangles(p.graph).empty())
            out.push_back(where + ": tagged planar-nosep but has a separating triangle");
        break;
    case PieceKindTag::Complete:
        if (!p.graph.is_complete()) out.push_back(where + ": tagged complete but is not complete");
        break;
    case PieceKindTag::Treewidth: {
        std::size_t t = p.kind.treewidth;
        if (p.certificate) {
            auto rep = validate_tree_decomposition(p.graph, *p.certificate);
            if (!rep.ok()) out.push_back(where + ": invalid certificate: " + rep.violations.front());
            else if (rep.width > static_cast<long>(t))
                out.push_back(where + ": certificate width " + std::to_string(rep.width) + " exceeds " + std::to_string(t));
            break;
        }
        if (t > 4) {
            out.push_back(where + ": treewidth " + std::to_string(t) + " claim needs a certificate");
            break;
        }
        auto r = treewidth_at_most(p.graph, t);
        if (!r) out.push_back(where + ": treewidth search budget exhausted; supply a certificate");
        else if (!*r) out.push_back(where + ": treewidth exceeds " + std::to_string(t));
        break;
    }
    case PieceKindTag::Generic:
        break;
    }
    return out;
}

/// Full audit: structure, reconstruction equals g, adhesion <= k, every kind
/// claim, and every piece usable by the single-crossing pipeline with the
/// given t (planar, or treewidth at most t).
inline DecompositionReport validate_decomposition(const CliqueSumDecomposition& d, const Graph& g, std::size_t k,
                                                  std::size_t t)
{
    DecompositionReport rep;
    rep.violations = structural_violations(d);
    if (!rep.ok()) return rep;
    rep.adhesion = d.adhesion();
    if (!(reconstruct(d) == g)) rep.violations.push_back("reconstruction differs from the graph");
    if (rep.adhesion > k)
        rep.violations.push_back("adhesion " + std::to_string(rep.adhesion) + " exceeds " + std::to_string(k));
    for (std::size_t i = 0; i < d.pieces.size(); ++i) {
        const Piece& p = d.pieces[i];
        for (auto& s : piece_kind_violations(p, i)) rep.violations.push_back(s);
        const std::string where = "piece " + std::to_string(i + 1);
        switch (p.kind.tag) {
        case PieceKindTag::Treewidth:
            if (p.kind.treewidth > t)
                rep.violations.push_back(where + ": treewidth " + std::to_string(p.kind.treewidth) + " exceeds t");
            break;
        case PieceKindTag::Complete:
            if (p.graph.vertex_count() > t + 1) rep.violations.push_back(where + ": complete piece larger than K_{t+1}");
            break;
        case PieceKindTag::Generic: {
            auto r = t <= 4 ? treewidth_at_most(p.graph, t) : std::optional<bool>{};
            if (!r || !*r) rep.violations.push_back(where + ": generic piece is neither planar nor of treewidth <= t");
            break;
        }
        default:
            break;
        }
    }
    return rep;
}

/// Decomposition of an arbitrary graph for drawing: every connected component
/// becomes a root. Planar components are single planar pieces (normalized);
/// others are converted from a min-fill tree decomposition.
inline CliqueSumDecomposition decompose(const Graph& g)
{
    CliqueSumDecomposition d;
    for (const auto& comp : connected_components(g)) {
        Graph c = induced_subgraph(g, VertexSet(comp.begin(), comp.end()));
        if (is_planar(c)) {
            Piece p;
            p.graph = c;
            p.kind = PieceKind::planar();
            d.pieces.push_back(std::move(p));
            continue;
        }
        CliqueSumDecomposition sub = treedecomp_to_cliquesums(c, greedy_tree_decomposition(c));
        std::size_t offset = d.pieces.size();
        for (Piece& p : sub.pieces) {
            if (p.parent) p.parent = *p.parent + offset;
            d.pieces.push_back(std::move(p));
        }
    }
    return normalize_planar_pieces(d);
}

} // namespace rcn
