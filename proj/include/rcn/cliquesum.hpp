#pragma once

#include <optional>

#include "rcn/graph.hpp"
#include "rcn/tree_decomposition.hpp"

namespace rcn {

enum class PieceKindTag {
    Planar,              ///< planar; separating triangles not excluded
    PlanarNoSepTriangle, ///< planar without separating triangles
    Complete,
    Treewidth,
    Generic,
};

struct PieceKind {
    PieceKindTag tag = PieceKindTag::Generic;
    std::size_t treewidth = 0; ///< only meaningful for Treewidth

    static PieceKind planar() { return {PieceKindTag::Planar, 0}; }
    static PieceKind planar_clean() { return {PieceKindTag::PlanarNoSepTriangle, 0}; }
    static PieceKind complete() { return {PieceKindTag::Complete, 0}; }
    static PieceKind bounded_treewidth(std::size_t t) { return {PieceKindTag::Treewidth, t}; }
    static PieceKind generic() { return {PieceKindTag::Generic, 0}; }

    bool is_planar() const { return tag == PieceKindTag::Planar || tag == PieceKindTag::PlanarNoSepTriangle; }

    friend bool operator==(const PieceKind&, const PieceKind&) = default;
};

inline std::string to_string(const PieceKind& k)
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

/// One piece of a clique-sum decomposition together with the join that
/// attaches it to its parent (absent for roots).
struct Piece {
    Graph graph;
    PieceKind kind;
    std::optional<std::size_t> parent;     ///< index of the parent piece, smaller than this piece's index
    VertexSet parent_clique;               ///< identified vertex names; empty for roots
    std::set<VertexPair> deletions;        ///< clique edges absent from the final graph
    std::optional<TreeDecomposition> certificate; ///< optional width witness for Treewidth pieces

    friend bool operator==(const Piece&, const Piece&) = default;
};

/// Pieces over a shared vertex-name space; identification is by name.
struct CliqueSumDecomposition {
    std::vector<Piece> pieces;

    std::size_t adhesion() const
    {
        std::size_t a = 0;
        for (const Piece& p : pieces) a = std::max(a, p.parent_clique.size());
        return a;
    }

    friend bool operator==(const CliqueSumDecomposition&, const CliqueSumDecomposition&) = default;
};

/// Structural problems in a decomposition, one message per violation.
inline std::vector<std::string> structural_violations(const CliqueSumDecomposition& d)
{
    std::vector<std::string> out;
    std::map<VertexId, std::size_t> occurrences;
    std::map<VertexId, std::size_t> join_count;
    for (std::size_t j = 0; j < d.pieces.size(); ++j) {
        const Piece& p = d.pieces[j];
        const std::string where = "piece " + std::to_string(j + 1);
        for (VertexId v : p.graph.vertices()) ++occurrences[v];
        if (!p.parent) {
            if (!p.parent_clique.empty()) out.push_back(where + ": root with non-empty parent clique");
            if (!p.deletions.empty()) out.push_back(where + ": root with deletions");
            continue;
        }
        if (*p.parent >= j) {
            out.push_back(where + ": parent index " + std::to_string(*p.parent + 1) + " is not smaller");
            continue;
        }
        const Piece& parent = d.pieces[*p.parent];
        for (VertexId v : p.parent_clique) {
            ++join_count[v];
            if (!p.graph.has_vertex(v) || !parent.graph.has_vertex(v))
                out.push_back(where + ": clique vertex " + to_string(v) + " missing from a joined piece");
        }
        if (!p.graph.is_clique(p.parent_clique)) out.push_back(where + ": parent clique is not a clique in the piece");
        if (!parent.graph.is_clique(p.parent_clique))
            out.push_back(where + ": parent clique is not a clique in the parent piece");
        for (const VertexPair& e : p.deletions)
            if (!p.parent_clique.contains(e.first) || !p.parent_clique.contains(e.second))
                out.push_back(where + ": deletion " + to_string(e.first) + "-" + to_string(e.second) +
                              " outside the join clique");
        for (VertexId v : p.graph.vertices())
            if (parent.graph.has_vertex(v) && !p.parent_clique.contains(v))
                out.push_back(where + ": vertex " + to_string(v) + " shared with parent outside the clique");
    }
    for (const auto& [v, n] : occurrences) {
        std::size_t joins = join_count.contains(v) ? join_count.at(v) : 0;
        if (n != joins + 1)
            out.push_back("vertex " + to_string(v) + " occurs in " + std::to_string(n) +
                          " pieces but only " + std::to_string(joins) + " joins identify it");
    }
    return out;
}

/// Union of the piece edge sets under name identification, minus every
/// per-join deletion. Throws GraphError if the decomposition is malformed.
inline Graph reconstruct(const CliqueSumDecomposition& d)
{
    auto problems = structural_violations(d);
    if (!problems.empty()) throw GraphError("reconstruct: " + problems.front());
    Graph g;
    for (const Piece& p : d.pieces) {
        for (VertexId v : p.graph.vertices()) g.add_vertex(v);
        for (const VertexPair& e : p.graph.edges()) g.ensure_edge(e.first, e.second);
    }
    for (const Piece& p : d.pieces)
        for (const VertexPair& e : p.deletions)
            if (g.has_edge(e.first, e.second)) g.remove_edge(e.first, e.second);
    return g;
}

} // namespace rcn
