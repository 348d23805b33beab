#pragma once

#include "rcn/decomposition/cliquesum_ops.hpp"
#include "rcn/hpartition/builders.hpp"

namespace rcn {

class ComposeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rooted piece tree. Each non-root piece hangs below the smallest-index piece
/// that contains its whole parent clique; extra roots hang below piece 0 with
/// an empty clique. home(v) is the smallest piece containing v.
struct PieceTree {
    std::vector<std::optional<std::size_t>> parent;
    std::vector<std::vector<std::size_t>> children;
    std::vector<std::size_t> depth;
    std::map<VertexId, std::size_t> home;
    std::vector<VertexSet> core;

    std::size_t size() const { return parent.size(); }

    /// a lies in the subtree rooted at j.
    bool in_subtree(std::size_t a, std::size_t j) const
    {
        while (depth[a] > depth[j]) a = *parent[a];
        return a == j;
    }

    /// The child of i on the path down to l, for l strictly below i.
    std::size_t child_toward(std::size_t i, std::size_t l) const
    {
        if (l == i || !in_subtree(l, i)) throw ComposeError("child_toward: piece is not below");
        while (*parent[l] != i) l = *parent[l];
        return l;
    }

    std::vector<std::size_t> path(std::size_t i, std::size_t l) const
    {
        std::vector<std::size_t> out{l};
        while (l != i) {
            if (!parent[l]) throw ComposeError("path: piece is not below");
            l = *parent[l];
            out.push_back(l);
        }
        std::reverse(out.begin(), out.end());
        return out;
    }
};

inline PieceTree root_and_order(const CliqueSumDecomposition& d)
{
    auto problems = structural_violations(d);
    if (!problems.empty()) throw ComposeError("root_and_order: " + problems.front());
    PieceTree t;
    const std::size_t h = d.pieces.size();
    t.parent.resize(h);
    t.children.resize(h);
    t.depth.assign(h, 0);
    t.core.resize(h);
    for (std::size_t j = 1; j < h; ++j) {
        const Piece& p = d.pieces[j];
        std::size_t parent = 0;
        if (p.parent && !p.parent_clique.empty()) {
            parent = *p.parent;
            for (std::size_t i = 0; i < *p.parent; ++i) {
                bool all = true;
                for (VertexId v : p.parent_clique)
                    if (!d.pieces[i].graph.has_vertex(v)) all = false;
                if (all) {
                    parent = i;
                    break;
                }
            }
        }
        t.parent[j] = parent;
        t.children[parent].push_back(j);
        t.depth[j] = t.depth[parent] + 1;
    }
    for (std::size_t i = 0; i < h; ++i)
        for (VertexId v : d.pieces[i].graph.vertices())
            if (t.home.try_emplace(v, i).second) t.core[i].insert(v);
    return t;
}

struct IsthmusLabel {
    VertexId v; ///< endpoint in the piece that owns the edge
    VertexId w; ///< endpoint further down the tree
    std::vector<std::size_t> path;
};

/// The blowup Q_i^- of one piece: its core plus one dummy per child, with
/// the edges of the final graph that it represents under their global ids.
struct PieceBlowup {
    std::size_t index = 0;
    VertexSet core;
    std::map<std::size_t, VertexId> dummies; ///< child piece -> dummy vertex
    std::map<EdgeId, IsthmusLabel> isthmus;
    Multigraph q;
    SimplicialBlowup blowup;
    std::set<VertexPair> dropped; ///< deleted clique edges outside every attachment, left out of the base
};

inline VertexId dummy_base(const Multigraph& g)
{
    return g.vertex_count() == 0 ? VertexId{0} : fresh_vertex_after(g.max_vertex_id());
}

inline VertexId dummy_of(const Multigraph& g, std::size_t j)
{
    return VertexId{dummy_base(g).value + static_cast<std::uint32_t>(j)};
}

/// Builds every Q_i^-. Edges of g keep their ids: an edge inside one core is
/// a core edge, any other edge vw becomes an isthmus edge from the endpoint v
/// with the shallower home to the dummy of the child subtree holding w.
inline std::vector<PieceBlowup> build_piece_blowups(const Multigraph& g, const CliqueSumDecomposition& d,
                                                   const PieceTree& t, std::size_t k)
{
    const std::size_t h = d.pieces.size();
    std::vector<PieceBlowup> out(h);
    for (std::size_t i = 0; i < h; ++i) {
        out[i].index = i;
        out[i].core = t.core[i];
        for (VertexId v : t.core[i]) out[i].q.add_vertex(v);
        for (std::size_t j : t.children[i]) {
            VertexId c = dummy_of(g, j);
            out[i].dummies[j] = c;
            out[i].q.add_vertex(c);
        }
    }
    for (VertexId v : g.vertices())
        if (!t.home.contains(v)) throw ComposeError("build_piece_blowups: vertex " + to_string(v) + " is in no piece");
    for (const auto& [id, e] : g.edges()) {
        std::size_t ha = t.home.at(e.first), hb = t.home.at(e.second);
        if (ha == hb) {
            out[ha].q.add_edge(id, e.first, e.second);
            continue;
        }
        VertexId v = e.first, w = e.second;
        if (t.in_subtree(ha, hb)) std::swap(v, w);
        else if (!t.in_subtree(hb, ha))
            throw ComposeError("build_piece_blowups: edge " + to_string(id) + " joins unrelated pieces");
        std::size_t i = t.home.at(v), l = t.home.at(w);
        std::size_t j = t.child_toward(i, l);
        if (!d.pieces[j].parent_clique.contains(v))
            throw ComposeError("build_piece_blowups: edge " + to_string(id) + " leaves piece " + std::to_string(i + 1) +
                               " outside the join clique");
        out[i].q.add_edge(id, v, out[i].dummies.at(j));
        out[i].isthmus[id] = {v, w, t.path(i, l)};
    }
    const Graph simple = g.simple();
    for (std::size_t i = 0; i < h; ++i) {
        PieceBlowup& b = out[i];
        Graph base = induced_subgraph(d.pieces[i].graph, b.core);
        for (const auto& [pair, m] : b.q.multiplicities()) {
            bool core_edge = b.core.contains(pair.first) && b.core.contains(pair.second);
            if (!core_edge) continue;
            if (m > 1) throw ComposeError("build_piece_blowups: parallel edges inside the core of piece " + std::to_string(i + 1));
            if (!base.has_edge(pair.first, pair.second))
                throw ComposeError("build_piece_blowups: edge missing from piece " + std::to_string(i + 1));
        }
        std::map<VertexId, Attachment> att;
        for (const auto& [j, c] : b.dummies) {
            Attachment a;
            for (EdgeId e : b.q.incident(c)) ++a.multiplicity[b.q.endpoints(e).other(c)];
            if (a.multiplicity.size() > k)
                throw ComposeError("build_piece_blowups: attachment of size " + std::to_string(a.multiplicity.size()) +
                                   " exceeds k = " + std::to_string(k));
            att[c] = std::move(a);
        }
        std::set<VertexPair> deletions;
        for (const VertexPair& e : base.edges()) {
            if (simple.has_edge(e.first, e.second)) continue;
            bool covered = false;
            for (const auto& [c, a] : att)
                if (a.multiplicity.contains(e.first) && a.multiplicity.contains(e.second)) covered = true;
            if (covered) deletions.insert(e);
            else b.dropped.insert(e);
        }
        for (const VertexPair& e : b.dropped) base.remove_edge(e.first, e.second);
        b.blowup = make_blowup(std::move(base), std::move(att), std::move(deletions), std::max<std::size_t>(k, 1));
        if (b.blowup.realize().multiplicities() != b.q.multiplicities())
            throw ComposeError("build_piece_blowups: blowup of piece " + std::to_string(i + 1) + " does not match its edges");
    }
    return out;
}

/// Every vertex of every Q_i^- has degree at most k * Delta(G).
inline std::vector<std::string> verify_degree_claim(const std::vector<PieceBlowup>& blowups, std::size_t k,
                                                    std::size_t delta)
{
    std::vector<std::string> out;
    for (const PieceBlowup& b : blowups)
        for (VertexId v : b.q.vertices())
            if (b.q.degree(v) > k * delta)
                out.push_back("piece " + std::to_string(b.index + 1) + ": degree " + std::to_string(b.q.degree(v)) + " of " +
                              to_string(v) + " exceeds " + std::to_string(k * delta));
    return out;
}

/// Drawing of one Q_i^- with the constant c_i it is certified for:
/// crossings <= c_i * Delta(Q) * ||Q||.
struct PieceDrawing {
    Drawing drawing;
    std::uint64_t c = 0;
    std::string method;
};

namespace detail {

/// Moves a drawing of realize() onto q's edge ids.
inline Drawing onto_global_ids(const Drawing& local, const Multigraph& q)
{
    if (local.graph.multiplicities() != q.multiplicities() || local.graph.vertex_count() != q.vertex_count())
        throw ComposeError("piece drawing does not match its blowup");
    Drawing out;
    out.graph = q;
    for (VertexId v : q.vertices()) out.position[v] = local.at(v);
    return out;
}

} // namespace detail

struct ComposeResult;
inline ComposeResult compose(const Multigraph& g, const CliqueSumDecomposition& d, std::size_t k, std::uint64_t c,
                             std::uint64_t seed);

/// Treewidth-t piece: the blowup keeps treewidth <= t, so it is drawn by
/// composing complete pieces along a tree decomposition of the core extended
/// by one leaf bag per added vertex.
inline PieceDrawing draw_treewidth_piece(const PieceBlowup& b, const Piece& piece, std::size_t t, std::uint64_t seed);

inline PieceDrawing draw_piece(const PieceBlowup& b, const Piece& piece, std::uint64_t seed = 1)
{
    PieceDrawing out;
    const SimplicialBlowup& q = b.blowup;
    if (b.q.vertex_count() == 0) {
        out.method = "empty";
        return out;
    }
    std::size_t largest = 0;
    for (const auto& [u, a] : q.attachments()) largest = std::max(largest, a.multiplicity.size());
    auto two_bag = [&] {
        BlowupDrawing r = draw_two_bag_blowup(q, seed);
        out.drawing = detail::onto_global_ids(r.drawing, b.q);
        std::size_t n = q.base().vertex_count();
        out.c = n == 0 ? 0 : n - 1;
        out.method = "two-bag";
    };
    auto planar = [&] {
        BlowupDrawing r = draw_planar_blowup(q, &piece.graph, seed);
        out.drawing = detail::onto_global_ids(r.drawing, b.q);
        out.c = 3;
        out.method = "planar-blowup";
    };
    switch (piece.kind.tag) {
    case PieceKindTag::PlanarNoSepTriangle:
        if (largest > 3) two_bag();
        else planar();
        break;
    case PieceKindTag::Planar:
        if (largest <= 3 && is_planar(piece.graph) && find_separating_triangles(piece.graph).empty()) planar();
        else two_bag();
        break;
    case PieceKindTag::Complete:
    case PieceKindTag::Generic:
        two_bag();
        break;
    case PieceKindTag::Treewidth:
        return draw_treewidth_piece(b, piece, piece.kind.treewidth, seed);
    }
    return out;
}

/// Replaces the dummy by a copy of inner scaled into a safe disk around it.
/// attach names, for every edge at the dummy, the inner vertex that takes
/// over its end. Rotations and scales are tried until the joined drawing is
/// in general position around the new vertices.
inline Drawing replace_dummy(const Drawing& partial, VertexId dummy, const Drawing& inner,
                             const std::map<EdgeId, VertexId>& attach)
{
    if (!partial.graph.has_vertex(dummy)) throw ComposeError("replace_dummy: missing dummy " + to_string(dummy));
    for (EdgeId e : partial.graph.incident(dummy)) {
        auto it = attach.find(e);
        if (it == attach.end()) throw ComposeError("replace_dummy: edge " + to_string(e) + " has no target");
        if (!inner.graph.has_vertex(it->second))
            throw ComposeError("replace_dummy: target " + to_string(it->second) + " not in the inner drawing");
    }
    for (VertexId v : inner.graph.vertices())
        if (v != dummy && partial.graph.has_vertex(v)) throw ComposeError("replace_dummy: shared vertex " + to_string(v));
    Drawing base = partial;
    std::vector<std::pair<EdgeId, VertexId>> ends;
    for (EdgeId e : partial.graph.incident(dummy)) ends.emplace_back(e, partial.graph.endpoints(e).other(dummy));
    if (inner.graph.vertex_count() == 0) {
        if (!ends.empty()) throw ComposeError("replace_dummy: empty inner drawing but the dummy has edges");
        base.graph.remove_vertex(dummy);
        base.position.erase(dummy);
        return base;
    }
    Disk disk = safe_disk_radius(partial, dummy);
    base.graph.remove_vertex(dummy);
    base.position.erase(dummy);
    VertexSet changed;
    for (VertexId v : inner.graph.vertices()) changed.insert(v);
    const std::size_t attempts = rational_rotations().size() * 24;
    for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
        Drawing placed = apply_map(inner, disk_candidate(inner, disk, attempt));
        Drawing out = base;
        for (const auto& [v, p] : placed.position) {
            out.graph.add_vertex(v);
            out.position[v] = p;
        }
        for (const auto& [e, p] : placed.graph.edges()) out.graph.add_edge(e, p.first, p.second);
        for (auto [e, x] : ends) out.graph.add_edge(e, x, attach.at(e));
        bool clash = false;
        for (const auto& [v, p] : placed.position)
            for (const auto& [u, q] : base.position)
                if (p == q) clash = true;
        if (clash) continue;
        if (local_general_position_report(out, changed, 1).ok()) return out;
    }
    throw ComposeError("replace_dummy: no placement inside the disk reached general position");
}

/// Crossing pairs of the final drawing sorted into the cases of the charging
/// argument. inherited: two core edges of one piece (present in its own
/// drawing). The other cases are seen from the isthmus edge e whose owning
/// piece is deepest: 1 other edge in e's core; 2a/2b isthmus edge of the same
/// piece to another / the same child; 3 edge with both ends below e's child;
/// 4 isthmus edge of a shallower piece.
struct ChargeSplit {
    std::uint64_t inherited = 0;
    std::uint64_t case1 = 0;
    std::uint64_t case2a = 0;
    std::uint64_t case2b = 0;
    std::uint64_t case3 = 0;
    std::uint64_t case4 = 0;
    std::uint64_t unclassified = 0;
    std::uint64_t max_charge_2b = 0;  ///< per edge
    std::uint64_t max_charge_34 = 0;  ///< per edge, cases 3 and 4 together

    std::uint64_t initial() const { return inherited + case1 + case2a; }
    std::uint64_t fresh() const { return case2b + case3 + case4; }
};

enum class CrossingCase { Inherited, Case1, Case2a, Case2b, Case3, Case4, Unclassified };

inline std::string to_string(CrossingCase c)
{
    switch (c) {
    case CrossingCase::Inherited: return "inherited";
    case CrossingCase::Case1: return "1";
    case CrossingCase::Case2a: return "2a";
    case CrossingCase::Case2b: return "2b";
    case CrossingCase::Case3: return "3";
    case CrossingCase::Case4: return "4";
    case CrossingCase::Unclassified: return "unclassified";
    }
    return "unclassified";
}

/// Which edge a classified crossing is charged to (for the new cases).
struct Classified {
    CrossingCase kind = CrossingCase::Unclassified;
    std::optional<EdgeId> charged;
};

inline Classified classify_crossing(const Multigraph& g, const PieceTree& t,
                                    const std::map<EdgeId, std::size_t>& owner_of,
                                    const std::set<EdgeId>& isthmus, EdgeId a, EdgeId b)
{
    auto owner = [&](EdgeId e) { return owner_of.at(e); };
    auto is_isthmus = [&](EdgeId e) { return isthmus.contains(e); };
    // Child of the owner toward the deeper endpoint of an isthmus edge.
    auto child_of = [&](EdgeId e) {
        const VertexPair& p = g.endpoints(e);
        std::size_t ha = t.home.at(p.first), hb = t.home.at(p.second);
        std::size_t i = owner(e);
        return t.child_toward(i, ha == i ? hb : ha);
    };
    Classified out;
    if (!is_isthmus(a) && !is_isthmus(b)) {
        if (owner(a) == owner(b)) out.kind = CrossingCase::Inherited;
        return out;
    }
    EdgeId e = a, f = b;
    if (!is_isthmus(a) || (is_isthmus(b) && t.depth[owner(b)] > t.depth[owner(a)])) std::swap(e, f);
    std::size_t i = owner(e);
    std::size_t j = child_of(e);
    if (!is_isthmus(f)) {
        std::size_t o = owner(f);
        if (o == i) out.kind = CrossingCase::Case1;
        else if (t.in_subtree(o, j)) {
            out.kind = CrossingCase::Case3;
            out.charged = f;
        }
        return out;
    }
    std::size_t fo = owner(f);
    if (fo == i) {
        if (child_of(f) != j) {
            out.kind = CrossingCase::Case2a;
        } else {
            out.kind = CrossingCase::Case2b;
            out.charged = std::min(e, f);
        }
        return out;
    }
    if (t.depth[fo] < t.depth[i] && t.in_subtree(i, fo)) {
        std::size_t gch = t.child_toward(fo, i);
        const VertexPair& p = g.endpoints(e);
        if (t.in_subtree(t.home.at(p.first), gch) && t.in_subtree(t.home.at(p.second), gch)) {
            out.kind = CrossingCase::Case4;
            out.charged = e;
        }
    }
    return out;
}

struct PieceBound {
    std::size_t index = 0;
    std::string kind;
    std::string method;
    std::uint64_t c = 0;
    std::uint64_t delta = 0;
    std::uint64_t edges = 0;
    std::uint64_t crossings = 0;
    std::uint64_t bound = 0;
};

struct BoundReport {
    std::string formula;
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::size_t delta = 0;
    std::size_t k = 0;
    std::uint64_t c = 0;
    std::optional<std::size_t> t;
    std::uint64_t bound = 0;
    std::uint64_t observed = 0;
    std::uint64_t max_per_edge = 0;
    std::uint64_t initial_sum = 0;
    std::uint64_t initial_bound = 0; ///< c k Delta(G) ||G||
    std::vector<PieceBound> pieces;
    ChargeSplit charges;
    std::vector<std::string> violations;
    std::vector<std::string> notes;

    bool ok() const { return violations.empty() && observed <= bound; }
};

struct ComposeResult {
    Drawing drawing;
    BoundReport report;
    PieceTree tree;
    std::vector<PieceBlowup> blowups;
};

/// Joins piece drawings in index order. Verifies on every run: fidelity of
/// the final graph, edge conservation, the degree claim, each piece's own
/// bound, the dummy invariant after every join, the case split of every
/// crossing with its per-edge charges, and the final bound.
inline ComposeResult compose(const Multigraph& g, const CliqueSumDecomposition& d_in, std::size_t k, std::uint64_t c,
                             std::uint64_t seed = 1)
{
    ComposeResult res;
    BoundReport& rep = res.report;
    CliqueSumDecomposition d = d_in;
    bool any_loose_planar = false;
    for (const Piece& p : d.pieces)
        if (p.kind.tag == PieceKindTag::Planar) any_loose_planar = true;
    if (any_loose_planar) {
        d = normalize_planar_pieces(d);
        rep.notes.push_back("planar pieces split at separating triangles");
    }
    if (d.pieces.empty()) {
        if (g.vertex_count() != 0) throw ComposeError("compose: no pieces for a non-empty graph");
        rep.formula = "k(c+2) Delta ||G||";
        return res;
    }
    if (!(reconstruct(d) == g.simple())) throw ComposeError("compose: decomposition does not reconstruct the graph");
    if (d.adhesion() > k) throw ComposeError("compose: adhesion exceeds k");

    rep.formula = "k(c+2) Delta ||G||";
    rep.vertices = g.vertex_count();
    rep.edges = g.edge_count();
    rep.delta = g.max_degree();
    rep.k = k;
    rep.c = c;
    rep.bound = static_cast<std::uint64_t>(k) * (c + 2) * rep.delta * rep.edges;
    rep.initial_bound = c * k * rep.delta * rep.edges;

    res.tree = root_and_order(d);
    const PieceTree& t = res.tree;
    res.blowups = build_piece_blowups(g, d, t, k);

    std::size_t conserved = 0;
    for (const PieceBlowup& b : res.blowups) conserved += b.q.edge_count();
    if (conserved != g.edge_count()) rep.violations.push_back("edge conservation fails");
    for (auto& s : verify_degree_claim(res.blowups, k, rep.delta)) rep.violations.push_back(s);

    std::vector<PieceDrawing> drawn;
    for (std::size_t i = 0; i < d.pieces.size(); ++i) {
        drawn.push_back(draw_piece(res.blowups[i], d.pieces[i], seed + i));
        PieceBound pb;
        pb.index = i;
        pb.kind = to_string(d.pieces[i].kind);
        pb.method = drawn.back().method;
        pb.c = drawn.back().c;
        pb.delta = res.blowups[i].q.max_degree();
        pb.edges = res.blowups[i].q.edge_count();
        pb.crossings = crossing_total(drawn.back().drawing);
        pb.bound = pb.c * pb.delta * pb.edges;
        if (pb.crossings > pb.bound)
            rep.violations.push_back("piece " + std::to_string(i + 1) + ": " + std::to_string(pb.crossings) +
                                     " crossings exceed its bound " + std::to_string(pb.bound));
        if (pb.c > c)
            rep.notes.push_back("piece " + std::to_string(i + 1) + " drawn with constant " + std::to_string(pb.c) +
                                " above c = " + std::to_string(c));
        rep.initial_sum += pb.crossings;
        rep.pieces.push_back(pb);
    }
    if (rep.initial_sum > rep.initial_bound) rep.violations.push_back("initial sum exceeds c k Delta ||G||");

    std::map<EdgeId, const IsthmusLabel*> labels;
    for (const PieceBlowup& b : res.blowups)
        for (const auto& [e, l] : b.isthmus) labels[e] = &l;

    Drawing cur = drawn[0].drawing;
    std::set<VertexId> expected_dummies;
    for (std::size_t j : t.children[0]) expected_dummies.insert(dummy_of(g, j));
    const VertexId first_dummy = dummy_base(g);
    for (std::size_t l = 1; l < d.pieces.size(); ++l) {
        VertexId cl = dummy_of(g, l);
        std::map<EdgeId, VertexId> attach;
        for (EdgeId e : cur.graph.incident(cl)) {
            const IsthmusLabel& lab = *labels.at(e);
            std::size_t hw = t.home.at(lab.w);
            attach[e] = hw == l ? lab.w : res.blowups[l].dummies.at(t.child_toward(l, hw));
        }
        cur = replace_dummy(cur, cl, drawn[l].drawing, attach);
        expected_dummies.erase(cl);
        for (std::size_t j : t.children[l]) expected_dummies.insert(dummy_of(g, j));
        std::set<VertexId> present;
        for (VertexId v : cur.graph.vertices())
            if (v >= first_dummy) present.insert(v);
        if (present != expected_dummies)
            rep.violations.push_back("dummy invariant fails after joining piece " + std::to_string(l + 1));
    }
    res.drawing = std::move(cur);
    if (!(res.drawing.graph == g)) rep.violations.push_back("final drawing's graph differs from the input graph");
    if (!is_general_position(res.drawing)) rep.violations.push_back("final drawing is not in general position");

    CrossingReport cr = count_crossings(res.drawing);
    rep.observed = cr.total;
    rep.max_per_edge = cr.max_per_edge();

    std::map<EdgeId, std::size_t> owner_of;
    std::set<EdgeId> isthmus;
    for (const PieceBlowup& b : res.blowups)
        for (const auto& [e, p] : b.q.edges()) {
            owner_of[e] = b.index;
            if (b.isthmus.contains(e)) isthmus.insert(e);
        }
    std::map<EdgeId, std::uint64_t> charge2b, charge34;
    ChargeSplit& cs = rep.charges;
    for (const auto& [a, b] : cr.pairs) {
        Classified x = classify_crossing(g, t, owner_of, isthmus, a, b);
        switch (x.kind) {
        case CrossingCase::Inherited: ++cs.inherited; break;
        case CrossingCase::Case1: ++cs.case1; break;
        case CrossingCase::Case2a: ++cs.case2a; break;
        case CrossingCase::Case2b: ++cs.case2b; ++charge2b[*x.charged]; break;
        case CrossingCase::Case3: ++cs.case3; ++charge34[*x.charged]; break;
        case CrossingCase::Case4: ++cs.case4; ++charge34[*x.charged]; break;
        case CrossingCase::Unclassified: ++cs.unclassified; break;
        }
    }
    for (const auto& [e, n] : charge2b) cs.max_charge_2b = std::max(cs.max_charge_2b, n);
    for (const auto& [e, n] : charge34) cs.max_charge_34 = std::max(cs.max_charge_34, n);
    const std::uint64_t kd = static_cast<std::uint64_t>(k) * rep.delta;
    if (cs.unclassified > 0) rep.violations.push_back(std::to_string(cs.unclassified) + " crossings fit no case");
    if (cs.max_charge_2b > kd) rep.violations.push_back("an edge is charged more than k Delta sibling crossings");
    if (cs.max_charge_34 > kd) rep.violations.push_back("an edge is charged more than k Delta subtree crossings");
    if (cs.fresh() > 2 * kd * rep.edges) rep.violations.push_back("new crossings exceed 2 k Delta ||G||");
    if (cs.initial() > rep.initial_sum) rep.violations.push_back("preserved crossings exceed the initial sum");
    if (rep.observed > rep.bound)
        rep.violations.push_back(std::to_string(rep.observed) + " crossings exceed the bound " + std::to_string(rep.bound));
    return res;
}

inline PieceDrawing draw_treewidth_piece(const PieceBlowup& b, const Piece& piece, std::size_t t, std::uint64_t seed)
{
    const SimplicialBlowup& q = b.blowup;
    const Graph& base = q.base();
    TreeDecomposition td;
    if (base.vertex_count() > 0) {
        if (piece.certificate) {
            td = *piece.certificate;
            for (auto& [id, bag] : td.bags) {
                VertexSet kept;
                for (VertexId v : bag)
                    if (base.has_vertex(v)) kept.insert(v);
                bag = kept;
            }
        } else {
            td = greedy_tree_decomposition(base);
        }
        auto check = validate_tree_decomposition(base, td);
        if (!check.ok()) throw ComposeError("treewidth piece: " + check.violations.front());
        if (check.width > static_cast<long>(t))
            throw ComposeError("treewidth piece: no decomposition of width " + std::to_string(t) + " available");
    }
    CliqueSumDecomposition inner;
    if (base.vertex_count() > 0) inner = treedecomp_to_cliquesums(base, td);
    const Graph simple_q = b.q.simple();
    for (const auto& [u, a] : q.attachments()) {
        VertexSet c = a.clique();
        Piece leaf;
        VertexSet all = c;
        all.insert(u);
        leaf.graph = complete_graph(all);
        leaf.kind = PieceKind::complete();
        if (!inner.pieces.empty()) {
            std::size_t parent = 0;
            for (std::size_t i = 0; i < inner.pieces.size(); ++i) {
                bool holds = true;
                for (VertexId v : c)
                    if (!inner.pieces[i].graph.has_vertex(v)) holds = false;
                if (holds) {
                    parent = i;
                    break;
                }
            }
            leaf.parent = parent;
            leaf.parent_clique = c;
            for (auto x = c.begin(); x != c.end(); ++x)
                for (auto y = std::next(x); y != c.end(); ++y)
                    if (!simple_q.has_edge(*x, *y)) leaf.deletions.emplace(*x, *y);
        }
        inner.pieces.push_back(std::move(leaf));
    }
    std::size_t inner_k = std::max<std::size_t>(t, 1);
    for (const auto& [u, a] : q.attachments()) inner_k = std::max(inner_k, a.multiplicity.size());
    ComposeResult r = compose(b.q, inner, inner_k, t, seed);
    if (!r.report.ok()) throw ComposeError("treewidth piece: inner composition failed: " +
                                           (r.report.violations.empty() ? std::string("bound") : r.report.violations.front()));
    PieceDrawing out;
    out.drawing = std::move(r.drawing);
    out.c = static_cast<std::uint64_t>(t) * (t + 2);
    out.method = "treewidth-" + std::to_string(t);
    return out;
}

/// Drawing of a graph of treewidth k from a tree decomposition of width k:
/// complete pieces joined with constant c = k; bound k(k+2) Delta ||G||.
/// k_floor raises k above the width when a looser parameter is wanted.
inline ComposeResult draw_treewidth(const Graph& g, const TreeDecomposition& td, std::uint64_t seed = 1,
                                    std::size_t k_floor = 0)
{
    auto check = validate_tree_decomposition(g, td);
    if (!check.ok()) throw ComposeError("draw_treewidth: " + check.violations.front());
    std::size_t k = std::max(static_cast<std::size_t>(std::max<long>(check.width, 1)), k_floor);
    Multigraph m = Multigraph::from_graph(g);
    CliqueSumDecomposition d = g.vertex_count() == 0 ? CliqueSumDecomposition{} : treedecomp_to_cliquesums(g, td);
    ComposeResult r = compose(m, d, k, k, seed);
    r.report.formula = "k(k+2) Delta ||G||";
    r.report.t = k;
    return r;
}

/// Single-crossing-minor-free pipeline: pieces planar or of treewidth <= t,
/// adhesion <= 3, c = t(t+2); bound 3(t^2+2t+2) Delta ||G||. t is the largest
/// treewidth tag, at least 3 and at least t_floor.
inline ComposeResult draw_single_crossing_free(const Graph& g, const CliqueSumDecomposition& d, std::uint64_t seed = 1,
                                               std::size_t t_floor = 3)
{
    std::size_t t = std::max<std::size_t>(3, t_floor);
    for (const Piece& p : d.pieces)
        if (p.kind.tag == PieceKindTag::Treewidth) t = std::max(t, p.kind.treewidth);
    auto rep = validate_decomposition(d, g, 3, t);
    if (!rep.ok()) throw ComposeError("draw_single_crossing_free: " + rep.violations.front());
    CliqueSumDecomposition n = normalize_planar_pieces(d);
    Multigraph m = Multigraph::from_graph(g);
    std::uint64_t c = static_cast<std::uint64_t>(t) * (t + 2);
    ComposeResult r = compose(m, n, 3, c, seed);
    r.report.formula = "3(t^2+2t+2) Delta ||G||";
    r.report.t = t;
    r.report.notes.push_back("treewidth pieces drawn with their own parameter t and joined with k = 3");
    return r;
}

} // namespace rcn
