#pragma once

#include <random>

#include "rcn/blowup.hpp"
#include "rcn/cliquesum.hpp"
#include "rcn/planar/separating.hpp"
#include "rcn/tree_decomposition.hpp"

namespace rcn {

class GeneratorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Rng = std::mt19937_64;

inline VertexId vid(std::size_t i) { return VertexId{static_cast<std::uint32_t>(i)}; }

namespace detail {

inline std::size_t uniform_index(Rng& rng, std::size_t n)
{
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

} // namespace detail

struct GraphWithTD {
    Graph graph;
    TreeDecomposition td;
};

/// Random k-tree on vertices 0..n-1: start from K_{k+1}, then attach each new
/// vertex to a k-subset of a random existing bag. The bags form its natural
/// width-k tree decomposition.
inline GraphWithTD gen_k_tree(std::size_t n, std::size_t k, std::uint64_t seed)
{
    if (k == 0) throw GeneratorError("gen_k_tree: k must be positive");
    if (n < k + 1) throw GeneratorError("gen_k_tree: need n >= k+1");
    Rng rng(seed);
    GraphWithTD out;
    VertexSet first;
    for (std::size_t i = 0; i <= k; ++i) first.insert(vid(i));
    out.graph = complete_graph(first);
    out.td.bags[0] = first;
    for (std::size_t v = k + 1; v < n; ++v) {
        std::size_t parent = detail::uniform_index(rng, out.td.bags.size());
        std::vector<VertexId> bag(out.td.bags[parent].begin(), out.td.bags[parent].end());
        bag.erase(bag.begin() + static_cast<long>(detail::uniform_index(rng, bag.size())));
        VertexSet nb(bag.begin(), bag.end());
        for (VertexId u : nb) out.graph.add_edge(vid(v), u);
        nb.insert(vid(v));
        std::size_t id = out.td.bags.size();
        out.td.bags[id] = nb;
        out.td.tree_edges.emplace_back(parent, id);
    }
    return out;
}

/// Spanning subgraph of a random k-tree keeping each edge with probability p.
/// The k-tree's decomposition stays valid.
inline GraphWithTD gen_partial_k_tree(std::size_t n, std::size_t k, double keep, std::uint64_t seed)
{
    if (!(keep > 0 && keep <= 1)) throw GeneratorError("gen_partial_k_tree: keep probability must be in (0, 1]");
    GraphWithTD full = gen_k_tree(n, k, seed);
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::bernoulli_distribution coin(keep);
    GraphWithTD out;
    out.td = full.td;
    for (VertexId v : full.graph.vertices()) out.graph.add_vertex(v);
    for (const VertexPair& e : full.graph.edges())
        if (coin(rng)) out.graph.add_edge(e.first, e.second);
    return out;
}

/// Maximal planar graph kept as its set of triangular faces.
class FaceTriangulation {
public:
    explicit FaceTriangulation(std::size_t n_hint = 4)
    {
        (void)n_hint;
        for (int i = 0; i < 4; ++i) g_.add_vertex(vid(i));
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) g_.add_edge(vid(i), vid(j));
        faces_ = {{vid(0), vid(1), vid(2)}, {vid(0), vid(1), vid(3)}, {vid(0), vid(2), vid(3)}, {vid(1), vid(2), vid(3)}};
    }

    const Graph& graph() const { return g_; }
    const std::set<Triangle>& faces() const { return faces_; }

    void insert_into(const Triangle& f, VertexId v)
    {
        faces_.erase(f);
        for (VertexId u : f) g_.add_edge(v, u);
        faces_.insert(sorted({f[0], f[1], v}));
        faces_.insert(sorted({f[0], f[2], v}));
        faces_.insert(sorted({f[1], f[2], v}));
    }

    /// Replaces edge ab, shared by faces abx and aby, with xy. Returns false if
    /// xy already exists or the edge is not flippable.
    bool flip(VertexId a, VertexId b)
    {
        std::vector<VertexId> apex;
        for (const Triangle& f : faces_)
            if (contains(f, a) && contains(f, b))
                for (VertexId x : f)
                    if (x != a && x != b) apex.push_back(x);
        if (apex.size() != 2 || g_.has_edge(apex[0], apex[1])) return false;
        if (g_.degree(a) <= 3 || g_.degree(b) <= 3) return false;
        VertexId x = apex[0], y = apex[1];
        faces_.erase(sorted({a, b, x}));
        faces_.erase(sorted({a, b, y}));
        faces_.insert(sorted({a, x, y}));
        faces_.insert(sorted({b, x, y}));
        g_.remove_edge(a, b);
        g_.add_edge(x, y);
        return true;
    }

private:
    static Triangle sorted(Triangle t)
    {
        std::sort(t.begin(), t.end());
        return t;
    }
    static bool contains(const Triangle& t, VertexId v) { return t[0] == v || t[1] == v || t[2] == v; }

    Graph g_;
    std::set<Triangle> faces_;
};

/// Random triangulation on vertices 0..n-1 by face insertion followed by
/// random edge flips. With forbid_separating_triangles, edges of separating
/// triangles are flipped until none remain or the budget runs out.
inline Graph gen_triangulation(std::size_t n, std::uint64_t seed, bool forbid_separating_triangles = false,
                               std::size_t budget = 0)
{
    if (n < 4) throw GeneratorError("gen_triangulation: need n >= 4");
    if (forbid_separating_triangles && n == 5)
        throw GeneratorError("gen_triangulation: every 5-vertex triangulation has a separating triangle");
    Rng rng(seed);
    FaceTriangulation t;
    for (std::size_t v = 4; v < n; ++v) {
        std::vector<Triangle> fs(t.faces().begin(), t.faces().end());
        t.insert_into(fs[detail::uniform_index(rng, fs.size())], vid(v));
    }
    for (std::size_t i = 0; i < 2 * n; ++i) {
        auto es = t.graph().edges();
        const VertexPair& e = es[detail::uniform_index(rng, es.size())];
        t.flip(e.first, e.second);
    }
    if (!forbid_separating_triangles) return t.graph();
    if (budget == 0) budget = 200 * n;
    for (std::size_t step = 0; step < budget; ++step) {
        auto sep = find_separating_triangles(t.graph());
        if (sep.empty()) return t.graph();
        const Triangle& bad = sep[detail::uniform_index(rng, sep.size())];
        std::size_t k = detail::uniform_index(rng, 3);
        t.flip(bad[k], bad[(k + 1) % 3]);
    }
    throw GeneratorError("gen_triangulation: budget exceeded while removing separating triangles");
}

/// floor(n/6) disjoint copies of K3,3 plus isolated remainder vertices.
inline Graph gen_disjoint_k33(std::size_t n)
{
    if (n < 6) throw GeneratorError("gen_disjoint_k33: need n >= 6");
    Graph g;
    for (std::size_t i = 0; i < n; ++i) g.add_vertex(vid(i));
    for (std::size_t c = 0; c + 6 <= n; c += 6)
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = 3; b < 6; ++b) g.add_edge(vid(c + a), vid(c + b));
    return g;
}

/// Disjoint K3,3 copies in which every pair of the six branch vertices gets
/// p = floor((Delta - 3) / 5) extra paths of length two. Each copy uses
/// 6 + 15p vertices; leftover vertices stay isolated.
inline Graph gen_thickened_k33(std::size_t n, std::size_t max_degree)
{
    if (max_degree < 4) throw GeneratorError("gen_thickened_k33: need Delta >= 4");
    std::size_t p = (max_degree - 3) / 5;
    std::size_t per_copy = 6 + 15 * p;
    std::size_t copies = n / per_copy;
    if (copies == 0) throw GeneratorError("gen_thickened_k33: n too small for one copy");
    Graph g;
    for (std::size_t i = 0; i < n; ++i) g.add_vertex(vid(i));
    for (std::size_t c = 0; c < copies; ++c) {
        std::size_t base = c * per_copy;
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = 3; b < 6; ++b) g.add_edge(vid(base + a), vid(base + b));
        std::size_t mid = base + 6;
        for (std::size_t a = 0; a < 6; ++a)
            for (std::size_t b = a + 1; b < 6; ++b)
                for (std::size_t r = 0; r < p; ++r) {
                    g.add_edge(vid(base + a), vid(mid));
                    g.add_edge(vid(mid), vid(base + b));
                    ++mid;
                }
    }
    return g;
}

/// Random clique of g of size at most want, grown from a random vertex.
inline VertexSet random_clique(const Graph& g, std::size_t want, Rng& rng)
{
    auto vs = g.vertices();
    VertexSet c;
    if (vs.empty() || want == 0) return c;
    c.insert(vs[detail::uniform_index(rng, vs.size())]);
    while (c.size() < want) {
        std::vector<VertexId> cand;
        for (VertexId u : g.neighbours(*c.begin()))
            if (!c.contains(u) && g.is_clique([&] {
                    VertexSet t = c;
                    t.insert(u);
                    return t;
                }()))
                cand.push_back(u);
        if (cand.empty()) break;
        c.insert(cand[detail::uniform_index(rng, cand.size())]);
    }
    return c;
}

/// Random (<= k)-simplicial blowup of g with `count` added vertices, random
/// multiplicities in [1, max_mult] and each attachment-clique edge deleted
/// with probability delete_prob. Added vertices are numbered after g's.
inline SimplicialBlowup gen_random_blowup(const Graph& g, std::size_t count, std::size_t k, std::size_t max_mult,
                                          double delete_prob, std::uint64_t seed)
{
    Rng rng(seed);
    std::map<VertexId, Attachment> att;
    std::set<VertexPair> del;
    std::uniform_int_distribution<std::size_t> mult(1, std::max<std::size_t>(1, max_mult));
    std::uniform_int_distribution<std::size_t> size(1, k);
    std::bernoulli_distribution drop(delete_prob);
    std::uint32_t next = g.vertex_count() == 0 ? 0 : g.max_vertex_id().value + 1;
    for (std::size_t i = 0; i < count; ++i) {
        Attachment a;
        for (VertexId v : random_clique(g, size(rng), rng)) a.multiplicity[v] = mult(rng);
        VertexSet c = a.clique();
        for (auto x = c.begin(); x != c.end(); ++x)
            for (auto y = std::next(x); y != c.end(); ++y)
                if (drop(rng)) del.emplace(*x, *y);
        att[VertexId{next++}] = std::move(a);
    }
    return make_blowup(g, std::move(att), std::move(del), k);
}

/// Blowup of a planar graph whose 3-attachments sit on triangles; with no
/// separating triangles these are faces.
inline SimplicialBlowup gen_planar_blowup(const Graph& g, std::size_t count, std::size_t max_mult,
                                          double delete_prob, std::uint64_t seed)
{
    return gen_random_blowup(g, count, 3, max_mult, delete_prob, seed);
}

struct GeneratedDecomposition {
    Graph graph;
    CliqueSumDecomposition decomposition;
};

/// Random clique-sum of planar pieces without separating triangles and
/// treewidth-3 pieces (with certificates), joined along cliques of size 1..3
/// with random deletions of clique edges. Vertex names are global.
inline GeneratedDecomposition gen_cliquesum_decomposition(std::size_t pieces, std::size_t max_vertices,
                                                          std::uint64_t seed, double planar_share = 0.5)
{
    if (pieces == 0) throw GeneratorError("gen_cliquesum_decomposition: need at least one piece");
    Rng rng(seed);
    GeneratedDecomposition out;
    std::uint32_t next_name = 0;
    std::size_t budget = max_vertices;
    std::bernoulli_distribution planar_coin(planar_share);
    std::bernoulli_distribution drop(0.3);
    std::uniform_int_distribution<std::size_t> clique_size(1, 3);
    for (std::size_t j = 0; j < pieces; ++j) {
        std::size_t remaining = pieces - j;
        std::size_t cap = std::max<std::size_t>(6, budget / remaining);
        std::size_t n = std::uniform_int_distribution<std::size_t>(4, std::max<std::size_t>(4, std::min<std::size_t>(cap, 40)))(rng);
        Piece piece;
        Graph local;
        std::optional<TreeDecomposition> local_td;
        if (planar_coin(rng)) {
            if (n == 5) n = 6;
            local = gen_triangulation(n, rng(), true);
            piece.kind = PieceKind::planar_clean();
        } else {
            GraphWithTD kt = gen_partial_k_tree(n, 3, 0.8, rng());
            local = kt.graph;
            local_td = kt.td;
            piece.kind = PieceKind::bounded_treewidth(3);
        }
        // Choose the join first: parent clique and matching child clique.
        std::map<VertexId, VertexId> rename;
        if (j > 0) {
            std::size_t parent = detail::uniform_index(rng, j);
            const Graph& pg = out.decomposition.pieces[parent].graph;
            VertexSet pc = random_clique(pg, clique_size(rng), rng);
            VertexSet cc = random_clique(local, pc.size(), rng);
            while (cc.size() < pc.size()) pc.erase(std::prev(pc.end()));
            auto pit = pc.begin();
            for (VertexId c : cc) rename[c] = *pit++;
            piece.parent = parent;
            piece.parent_clique = pc;
            for (auto a = pc.begin(); a != pc.end(); ++a)
                for (auto b = std::next(a); b != pc.end(); ++b)
                    if (drop(rng)) piece.deletions.emplace(*a, *b);
        }
        for (VertexId v : local.vertices())
            if (!rename.contains(v)) rename[v] = VertexId{next_name++};
        for (VertexId v : local.vertices()) piece.graph.add_vertex(rename[v]);
        for (const VertexPair& e : local.edges()) piece.graph.add_edge(rename[e.first], rename[e.second]);
        if (local_td) {
            TreeDecomposition td;
            td.tree_edges = local_td->tree_edges;
            for (const auto& [id, bag] : local_td->bags)
                for (VertexId v : bag) td.bags[id].insert(rename[v]);
            piece.certificate = td;
        }
        budget = budget > n ? budget - (n - piece.parent_clique.size()) : 0;
        out.decomposition.pieces.push_back(std::move(piece));
    }
    out.graph = reconstruct(out.decomposition);
    return out;
}

} // namespace rcn
