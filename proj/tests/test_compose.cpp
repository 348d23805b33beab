#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace rcn;
using oracle::V;

namespace {

Piece make_piece(Graph g, PieceKind kind, std::optional<std::size_t> parent = {}, VertexSet clique = {},
                 std::set<VertexPair> deletions = {})
{
    Piece p;
    p.graph = std::move(g);
    p.kind = kind;
    p.parent = parent;
    p.parent_clique = std::move(clique);
    p.deletions = std::move(deletions);
    return p;
}

Graph k_on(std::initializer_list<std::uint32_t> names)
{
    VertexSet s;
    for (auto n : names) s.insert(V(n));
    return complete_graph(s);
}

/// Two K4s glued on the triangle {0,1,2}: {0,1,2,3} and {0,1,2,4}.
CliqueSumDecomposition two_k4()
{
    CliqueSumDecomposition d;
    d.pieces.push_back(make_piece(k_on({0, 1, 2, 3}), PieceKind::complete()));
    d.pieces.push_back(make_piece(k_on({0, 1, 2, 4}), PieceKind::complete(), 0, {V(0), V(1), V(2)}));
    return d;
}

/// Oracle check of a composition result: exact crossing pairs, graph
/// equality with the input, and the bound.
void expect_sound(const ComposeResult& r, const Multigraph& g)
{
    EXPECT_TRUE(r.report.violations.empty()) << r.report.violations.front();
    EXPECT_TRUE(r.drawing.graph == g);
    auto pairs = oracle::crossing_pairs(r.drawing);
    EXPECT_EQ(pairs.size(), r.report.observed);
    EXPECT_LE(r.report.observed, r.report.bound);
    EXPECT_TRUE(is_general_position(r.drawing));
}

} // namespace

TEST(PieceTree, SinglePiece)
{
    CliqueSumDecomposition d;
    d.pieces.push_back(make_piece(k_on({0, 1, 2}), PieceKind::complete()));
    PieceTree t = root_and_order(d);
    EXPECT_EQ(t.size(), 1u);
    EXPECT_FALSE(t.parent[0]);
    EXPECT_EQ(t.core[0].size(), 3u);
}

TEST(PieceTree, ChainAndStar)
{
    CliqueSumDecomposition chain;
    chain.pieces.push_back(make_piece(k_on({0, 1}), PieceKind::complete()));
    chain.pieces.push_back(make_piece(k_on({1, 2}), PieceKind::complete(), 0, {V(1)}));
    chain.pieces.push_back(make_piece(k_on({2, 3}), PieceKind::complete(), 1, {V(2)}));
    PieceTree t = root_and_order(chain);
    EXPECT_EQ(*t.parent[1], 0u);
    EXPECT_EQ(*t.parent[2], 1u);
    EXPECT_EQ(t.depth[2], 2u);
    EXPECT_EQ(t.path(0, 2), (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_EQ(t.child_toward(0, 2), 1u);

    CliqueSumDecomposition star;
    star.pieces.push_back(make_piece(k_on({0, 1, 2}), PieceKind::complete()));
    for (std::uint32_t j = 0; j < 3; ++j)
        star.pieces.push_back(make_piece(k_on({j, 10 + j}), PieceKind::complete(), 0, {V(j)}));
    PieceTree s = root_and_order(star);
    EXPECT_EQ(s.children[0].size(), 3u);
    for (std::size_t j = 1; j < 4; ++j) EXPECT_EQ(s.depth[j], 1u);
}

TEST(PieceTree, ParentIsSmallestPieceHoldingTheClique)
{
    // Piece 3 names piece 2 as parent, but its clique {1} already lies in piece 1.
    CliqueSumDecomposition d;
    d.pieces.push_back(make_piece(k_on({0, 1}), PieceKind::complete()));
    d.pieces.push_back(make_piece(k_on({1, 2}), PieceKind::complete(), 0, {V(1)}));
    d.pieces.push_back(make_piece(k_on({1, 3}), PieceKind::complete(), 1, {V(1)}));
    PieceTree t = root_and_order(d);
    EXPECT_EQ(*t.parent[2], 0u);
    EXPECT_EQ(t.home.at(V(1)), 0u);
}

TEST(PieceBlowups, TwoK4sOnATriangle)
{
    CliqueSumDecomposition d = two_k4();
    Multigraph g = Multigraph::from_graph(reconstruct(d));
    PieceTree t = root_and_order(d);
    auto b = build_piece_blowups(g, d, t, 3);
    ASSERT_EQ(b.size(), 2u);
    VertexId c1 = b[0].dummies.at(1);
    EXPECT_EQ(b[0].q.degree(c1), 3u);
    std::set<std::pair<VertexId, VertexId>> labels;
    for (const auto& [e, l] : b[0].isthmus) {
        labels.emplace(l.v, l.w);
        EXPECT_EQ(l.path, (std::vector<std::size_t>{0, 1}));
    }
    EXPECT_EQ(labels, (std::set<std::pair<VertexId, VertexId>>{{V(0), V(4)}, {V(1), V(4)}, {V(2), V(4)}}));
    EXPECT_EQ(b[1].q.vertex_count(), 1u);
    EXPECT_EQ(b[0].q.edge_count() + b[1].q.edge_count(), g.edge_count());
    EXPECT_TRUE(verify_degree_claim(b, 3, g.max_degree()).empty());
}

TEST(PieceBlowups, SinglePieceIsTheGraph)
{
    CliqueSumDecomposition d;
    d.pieces.push_back(make_piece(k_on({0, 1, 2, 3}), PieceKind::complete()));
    Multigraph g = Multigraph::from_graph(reconstruct(d));
    auto b = build_piece_blowups(g, d, root_and_order(d), 3);
    EXPECT_TRUE(b[0].q == g);
    EXPECT_TRUE(b[0].dummies.empty());
}

TEST(PieceBlowups, DeletedCliqueEdgeIsAbsent)
{
    CliqueSumDecomposition d = two_k4();
    d.pieces[1].deletions = {VertexPair(V(0), V(1))};
    Graph simple = reconstruct(d);
    EXPECT_FALSE(simple.has_edge(V(0), V(1)));
    Multigraph g = Multigraph::from_graph(simple);
    auto b = build_piece_blowups(g, d, root_and_order(d), 3);
    for (const auto& blowup : b)
        for (const auto& [e, p] : blowup.q.edges()) EXPECT_NE(p, VertexPair(V(0), V(1)));
    EXPECT_TRUE(b[0].blowup.deletions().contains(VertexPair(V(0), V(1))));
}

TEST(PieceBlowups, DeletionOutsideEveryAttachmentIsDropped)
{
    // Child {0,1,2} joins on the edge 01, which is deleted, and only 0 reaches into it.
    CliqueSumDecomposition d;
    d.pieces.push_back(make_piece(k_on({0, 1, 3}), PieceKind::complete()));
    Graph child = oracle::make_graph({{0, 1}, {0, 2}});
    d.pieces.push_back(make_piece(child, PieceKind::generic(), 0, {V(0), V(1)}, {VertexPair(V(0), V(1))}));
    Multigraph g = Multigraph::from_graph(reconstruct(d));
    auto b = build_piece_blowups(g, d, root_and_order(d), 2);
    EXPECT_TRUE(b[0].dropped.contains(VertexPair(V(0), V(1))));
    EXPECT_TRUE(b[0].blowup.realize().multiplicities() == b[0].q.multiplicities());
}

TEST(PieceBlowups, DegreeClaim)
{
    // Dummy over a 3-clique in a graph of maximum degree 4 has degree <= 12.
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto gen = gen_cliquesum_decomposition(6, 60, seed);
        Multigraph g = Multigraph::from_graph(gen.graph);
        auto b = build_piece_blowups(g, gen.decomposition, root_and_order(gen.decomposition), 3);
        EXPECT_TRUE(verify_degree_claim(b, 3, g.max_degree()).empty());
        std::size_t sum = 0;
        for (const auto& x : b) sum += x.q.edge_count();
        EXPECT_EQ(sum, g.edge_count());
        // A vertex in no join clique toward its subtree keeps its degree.
        for (const auto& x : b)
            for (VertexId v : x.core) {
                bool involved = false;
                for (const auto& [j, c] : x.dummies) involved |= gen.decomposition.pieces[j].parent_clique.contains(v);
                if (!involved && x.index == 0) {
                    EXPECT_EQ(x.q.degree(v), g.degree(v));
                }
                EXPECT_LE(x.q.degree(v), g.degree(v));
            }
    }
}

TEST(PieceBlowups, CrossEdgeOutsideTheCliqueRejected)
{
    CliqueSumDecomposition d = two_k4();
    Multigraph g = Multigraph::from_graph(reconstruct(d));
    g.add_edge(EdgeId{1000}, V(3), V(4));
    EXPECT_THROW(build_piece_blowups(g, d, root_and_order(d), 3), ComposeError);
}

TEST(DrawPiece, PlanarWithoutDummiesIsCrossingFree)
{
    Graph tri = gen_triangulation(12, 3, true);
    CliqueSumDecomposition d;
    d.pieces.push_back(make_piece(tri, PieceKind::planar_clean()));
    Multigraph g = Multigraph::from_graph(tri);
    auto b = build_piece_blowups(g, d, root_and_order(d), 3);
    PieceDrawing pd = draw_piece(b[0], d.pieces[0]);
    EXPECT_EQ(oracle::crossing_pairs(pd.drawing).size(), 0u);
    EXPECT_TRUE(pd.drawing.graph == g);
}

TEST(DrawPiece, CompleteWithOneDummy)
{
    CliqueSumDecomposition d = two_k4();
    Multigraph g = Multigraph::from_graph(reconstruct(d));
    auto b = build_piece_blowups(g, d, root_and_order(d), 3);
    PieceDrawing pd = draw_piece(b[0], d.pieces[0]);
    EXPECT_EQ(pd.c, 3u);
    std::uint64_t bound = 3 * b[0].q.max_degree() * b[0].q.edge_count();
    EXPECT_LE(oracle::crossing_pairs(pd.drawing).size(), bound);
    EXPECT_TRUE(pd.drawing.graph == b[0].q);
}

TEST(DrawPiece, TreewidthTwoWithDummy)
{
    // A partial 2-tree root piece with a leaf piece on one of its edges.
    GraphWithTD kt = gen_k_tree(10, 2, 5);
    CliqueSumDecomposition d;
    d.pieces.push_back(make_piece(kt.graph, PieceKind::bounded_treewidth(2)));
    d.pieces.back().certificate = kt.td;
    VertexPair e = kt.graph.edges().front();
    Graph leaf = k_on({e.first.value, e.second.value, 100});
    d.pieces.push_back(make_piece(leaf, PieceKind::complete(), 0, {e.first, e.second}));
    Multigraph g = Multigraph::from_graph(reconstruct(d));
    auto b = build_piece_blowups(g, d, root_and_order(d), 2);
    PieceDrawing pd = draw_piece(b[0], d.pieces[0]);
    EXPECT_EQ(pd.c, 8u);
    EXPECT_TRUE(pd.drawing.graph == b[0].q);
    EXPECT_LE(oracle::crossing_pairs(pd.drawing).size(), 8 * b[0].q.max_degree() * b[0].q.edge_count());
}

TEST(ReplaceDummy, SingleVertexKeepsCrossingPairs)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Drawing d = oracle::random_gp_drawing(rng, 8, 0.5);
        VertexId w = V(static_cast<std::uint32_t>(trial % 8));
        Drawing inner;
        VertexId x{500};
        inner.graph.add_vertex(x);
        inner.position[x] = {Rational(7), Rational(-3)};
        std::map<EdgeId, VertexId> attach;
        for (EdgeId e : d.graph.incident(w)) attach[e] = x;
        Drawing out = replace_dummy(d, w, inner, attach);
        EXPECT_EQ(oracle::crossing_pairs(out), oracle::crossing_pairs(d));
    }
}

TEST(ReplaceDummy, InnerCrossingPreserved)
{
    Drawing d;
    d.graph.add_edge(EdgeId{0}, V(0), V(9));
    d.position[V(0)] = {Rational(0), Rational(0)};
    d.position[V(9)] = {Rational(10), Rational(1)};
    Drawing inner = oracle::convex_complete(4);
    Drawing shifted;
    for (const auto& [v, p] : inner.position) shifted.position[VertexId{v.value + 20}] = p;
    for (const auto& [e, p] : inner.graph.edges())
        shifted.graph.add_edge(EdgeId{e.value + 20}, VertexId{p.first.value + 20}, VertexId{p.second.value + 20});
    Drawing out = replace_dummy(d, V(9), shifted, {{EdgeId{0}, V(20)}});
    auto pairs = oracle::crossing_pairs(out);
    EXPECT_EQ(oracle::crossing_pairs(shifted).size(), 1u);
    EXPECT_TRUE(pairs.contains(*oracle::crossing_pairs(shifted).begin()));
    EXPECT_EQ(pairs.size(), 1u);
}

TEST(ReplaceDummy, SiblingEdgesCrossAtMostOnce)
{
    // Dummy at the origin with two edges from opposite sides to two inner vertices.
    Drawing d;
    d.graph.add_edge(EdgeId{0}, V(1), V(0));
    d.graph.add_edge(EdgeId{1}, V(2), V(0));
    d.position[V(0)] = {Rational(0), Rational(0)};
    d.position[V(1)] = {Rational(-10), Rational(1)};
    d.position[V(2)] = {Rational(10), Rational(2)};
    Drawing inner;
    inner.graph.add_edge(EdgeId{5}, V(30), V(31));
    inner.position[V(30)] = {Rational(1), Rational(0)};
    inner.position[V(31)] = {Rational(-1), Rational(0)};
    Drawing out = replace_dummy(d, V(0), inner, {{EdgeId{0}, V(30)}, {EdgeId{1}, V(31)}});
    auto pairs = oracle::crossing_pairs(out);
    EXPECT_LE(pairs.size(), 1u);
    for (const EdgePair& p : pairs) EXPECT_EQ(p, make_edge_pair(EdgeId{0}, EdgeId{1}));
}

TEST(ReplaceDummy, Errors)
{
    Drawing d;
    d.graph.add_edge(EdgeId{0}, V(0), V(1));
    d.position[V(0)] = {Rational(0), Rational(0)};
    d.position[V(1)] = {Rational(1), Rational(0)};
    Drawing inner;
    inner.graph.add_vertex(V(5));
    inner.position[V(5)] = {Rational(0), Rational(0)};
    EXPECT_THROW(replace_dummy(d, V(7), inner, {}), ComposeError);
    EXPECT_THROW(replace_dummy(d, V(1), inner, {}), ComposeError);
}

TEST(Compose, SinglePlanarPiece)
{
    Graph tri = gen_triangulation(20, 9, true);
    CliqueSumDecomposition d;
    d.pieces.push_back(make_piece(tri, PieceKind::planar_clean()));
    Multigraph g = Multigraph::from_graph(tri);
    ComposeResult r = compose(g, d, 3, 3);
    expect_sound(r, g);
    EXPECT_EQ(r.report.observed, 0u);
}

TEST(Compose, TwoK4sOnATriangle)
{
    CliqueSumDecomposition d = two_k4();
    Multigraph g = Multigraph::from_graph(reconstruct(d));
    ComposeResult r = compose(g, d, 3, 3);
    expect_sound(r, g);
    EXPECT_EQ(r.report.bound, 3u * 5 * g.max_degree() * g.edge_count());
    EXPECT_EQ(r.report.charges.unclassified, 0u);
}

TEST(Compose, RandomTenPieceDecompositions)
{
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        auto gen = gen_cliquesum_decomposition(10, 120, seed);
        Multigraph g = Multigraph::from_graph(gen.graph);
        ComposeResult r = compose(g, gen.decomposition, 3, 15, seed);
        expect_sound(r, g);
        EXPECT_TRUE(r.drawing.graph.simple() == reconstruct(gen.decomposition));
        const ChargeSplit& c = r.report.charges;
        EXPECT_EQ(c.initial() + c.fresh() + c.unclassified, r.report.observed);
        EXPECT_EQ(c.unclassified, 0u);
    }
}

TEST(Compose, InvalidDecompositionRejected)
{
    CliqueSumDecomposition d = two_k4();
    Multigraph g = Multigraph::from_graph(k_on({0, 1, 2, 3}));
    EXPECT_THROW(compose(g, d, 3, 3), ComposeError);
    Multigraph ok = Multigraph::from_graph(reconstruct(d));
    EXPECT_THROW(compose(ok, d, 2, 3), ComposeError);
}

TEST(DrawTreewidth, Tree)
{
    GraphWithTD t = gen_k_tree(30, 1, 4);
    ComposeResult r = draw_treewidth(t.graph, t.td);
    Multigraph g = Multigraph::from_graph(t.graph);
    expect_sound(r, g);
    EXPECT_EQ(r.report.bound, 3u * g.max_degree() * g.edge_count());
}

TEST(DrawTreewidth, K4)
{
    Graph k4 = k_on({0, 1, 2, 3});
    TreeDecomposition td;
    td.bags[0] = {V(0), V(1), V(2), V(3)};
    ComposeResult r = draw_treewidth(k4, td);
    expect_sound(r, Multigraph::from_graph(k4));
    EXPECT_EQ(r.report.bound, 15u * 3 * 6);
    EXPECT_LE(r.report.observed, 1u);
}

TEST(DrawTreewidth, RandomPartialKTrees)
{
    for (std::size_t k = 1; k <= 4; ++k)
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            GraphWithTD t = gen_partial_k_tree(40, k, 0.7, seed * 10 + k);
            ComposeResult r = draw_treewidth(t.graph, t.td, seed);
            expect_sound(r, Multigraph::from_graph(t.graph));
        }
}

TEST(DrawTreewidth, InvalidDecompositionRejected)
{
    Graph k4 = k_on({0, 1, 2, 3});
    TreeDecomposition td;
    td.bags[0] = {V(0), V(1), V(2)};
    EXPECT_THROW(draw_treewidth(k4, td), ComposeError);
}

TEST(SingleCrossingFree, AllPlanarUsesTThree)
{
    Graph tri = gen_triangulation(15, 2, false);
    CliqueSumDecomposition d;
    d.pieces.push_back(make_piece(tri, PieceKind::planar()));
    ComposeResult r = draw_single_crossing_free(tri, d);
    Multigraph g = Multigraph::from_graph(tri);
    expect_sound(r, g);
    EXPECT_EQ(*r.report.t, 3u);
    EXPECT_EQ(r.report.bound, 3u * 17 * g.max_degree() * g.edge_count());
}

TEST(SingleCrossingFree, PlanarAndTreewidthOnAnEdge)
{
    Graph tri = gen_triangulation(10, 4, true);
    VertexPair e = tri.edges().front();
    GraphWithTD kt = gen_k_tree(8, 3, 6);
    // Rename the 3-tree so that two adjacent vertices become the shared edge.
    VertexPair f = kt.graph.edges().front();
    auto name = [&](VertexId v) {
        if (v == f.first) return e.first;
        if (v == f.second) return e.second;
        return VertexId{v.value + 100};
    };
    Graph other;
    for (VertexId v : kt.graph.vertices()) other.add_vertex(name(v));
    for (const VertexPair& x : kt.graph.edges()) other.add_edge(name(x.first), name(x.second));
    TreeDecomposition td;
    td.tree_edges = kt.td.tree_edges;
    for (const auto& [id, bag] : kt.td.bags)
        for (VertexId v : bag) td.bags[id].insert(name(v));
    CliqueSumDecomposition d;
    d.pieces.push_back(make_piece(tri, PieceKind::planar_clean()));
    d.pieces.push_back(make_piece(other, PieceKind::bounded_treewidth(3), 0, {e.first, e.second}));
    d.pieces.back().certificate = td;
    Graph g = reconstruct(d);
    ComposeResult r = draw_single_crossing_free(g, d);
    expect_sound(r, Multigraph::from_graph(g));
}

TEST(SingleCrossingFree, TwoDisjointK4s)
{
    CliqueSumDecomposition d;
    d.pieces.push_back(make_piece(k_on({0, 1, 2, 3}), PieceKind::planar()));
    d.pieces.push_back(make_piece(k_on({4, 5, 6, 7}), PieceKind::planar()));
    Graph g = reconstruct(d);
    ComposeResult r = draw_single_crossing_free(g, d);
    expect_sound(r, Multigraph::from_graph(g));
    EXPECT_EQ(r.report.observed, 0u);
}

TEST(SingleCrossingFree, RejectsLargeAdhesion)
{
    CliqueSumDecomposition d;
    d.pieces.push_back(make_piece(k_on({0, 1, 2, 3, 4}), PieceKind::complete()));
    d.pieces.push_back(make_piece(k_on({0, 1, 2, 3, 5}), PieceKind::complete(), 0, {V(0), V(1), V(2), V(3)}));
    EXPECT_THROW(draw_single_crossing_free(reconstruct(d), d), ComposeError);
}
