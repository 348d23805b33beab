#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rcn/rcn.hpp"

using namespace rcn;
using namespace oracle;

namespace {

Graph complete(std::uint32_t n)
{
    Graph g;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) g.add_edge(V(i), V(j));
    return g;
}

TreeDecomposition td_of(std::vector<std::vector<std::uint32_t>> bags, std::vector<std::pair<std::size_t, std::size_t>> tree)
{
    TreeDecomposition td;
    for (std::size_t i = 0; i < bags.size(); ++i)
        for (std::uint32_t v : bags[i]) td.bags[i].insert(V(v));
    for (std::size_t i = 0; i < bags.size(); ++i) td.bags[i];
    td.tree_edges = std::move(tree);
    return td;
}

bool mentions(const std::vector<std::string>& violations, const std::string& what)
{
    for (const auto& s : violations)
        if (s.find(what) != std::string::npos) return true;
    return false;
}

CliqueSumDecomposition planar_single(const Graph& g)
{
    CliqueSumDecomposition d;
    Piece p;
    p.graph = g;
    p.kind = PieceKind::planar();
    d.pieces.push_back(p);
    return d;
}

/// K4 on 0..3 with vertex 4 stacked into face 012 and vertex 5 into face 014.
Graph double_stack()
{
    Graph g = complete(4);
    for (std::uint32_t v : {0u, 1u, 2u}) g.add_edge(V(4), V(v));
    for (std::uint32_t v : {0u, 1u, 4u}) g.add_edge(V(5), V(v));
    return g;
}

} // namespace

TEST(ValidateTreeDecomposition, PathIsWidthOne)
{
    Graph p = make_graph({{0, 1}, {1, 2}});
    auto rep = validate_tree_decomposition(p, td_of({{0, 1}, {1, 2}}, {{0, 1}}));
    EXPECT_TRUE(rep.ok());
    EXPECT_EQ(rep.width, 1);
    EXPECT_EQ(rep.adhesion, 1u);
}

TEST(ValidateTreeDecomposition, NamesUncoveredEdgeAndBrokenTrace)
{
    Graph p = make_graph({{0, 1}, {1, 2}, {0, 2}});
    auto missing = validate_tree_decomposition(p, td_of({{0, 1}, {1, 2}}, {{0, 1}}));
    EXPECT_TRUE(mentions(missing.violations, "edge v0-v2")) << missing.violations.front();

    Graph path = make_graph({{0, 1}, {1, 2}, {2, 3}});
    auto broken = validate_tree_decomposition(path, td_of({{0, 1}, {1, 2}, {2, 3, 0}}, {{0, 1}, {1, 2}}));
    EXPECT_TRUE(mentions(broken.violations, "vertex v0")) << broken.violations.front();

    auto cyclic = validate_tree_decomposition(path, td_of({{0, 1}, {1, 2}, {2, 3}}, {{0, 1}, {1, 2}, {2, 0}}));
    EXPECT_FALSE(cyclic.ok());
}

TEST(TreedecompToCliquesums, Examples)
{
    Graph star = make_graph({{0, 1}, {0, 2}, {0, 3}});
    auto ds = treedecomp_to_cliquesums(star, td_of({{0, 1}, {0, 2}, {0, 3}}, {{0, 1}, {0, 2}}));
    EXPECT_EQ(ds.pieces.size(), 3u);
    for (const Piece& p : ds.pieces) EXPECT_EQ(p.graph.vertex_count(), 2u);
    EXPECT_EQ(reconstruct(ds), star);

    auto dk = treedecomp_to_cliquesums(complete(4), td_of({{0, 1, 2, 3}}, {}));
    ASSERT_EQ(dk.pieces.size(), 1u);
    EXPECT_TRUE(dk.pieces[0].deletions.empty());
    EXPECT_EQ(reconstruct(dk), complete(4));

    Graph c4 = make_graph({{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    auto dc = treedecomp_to_cliquesums(c4, td_of({{0, 1, 2}, {0, 2, 3}}, {{0, 1}}));
    ASSERT_EQ(dc.pieces.size(), 2u);
    for (const Piece& p : dc.pieces) EXPECT_TRUE(p.graph.is_complete());
    EXPECT_EQ(dc.pieces[1].deletions, (std::set<VertexPair>{VertexPair(V(0), V(2))}));
    EXPECT_EQ(reconstruct(dc), c4);
}

TEST(TreedecompToCliquesums, RedundantBagsArePruned)
{
    Graph p = make_graph({{0, 1}, {1, 2}});
    auto d = treedecomp_to_cliquesums(p, td_of({{0, 1}, {1}, {1, 2}, {2}}, {{0, 1}, {1, 2}, {2, 3}}));
    EXPECT_EQ(d.pieces.size(), 2u);
    EXPECT_EQ(reconstruct(d), p);
}

TEST(TreedecompToCliquesums, ReconstructsFiveHundredPartialKTrees)
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 500; ++trial) {
        std::size_t k = 1 + trial % 4;
        std::size_t n = k + 1 + rng() % 40;
        double keep = 0.2 + 0.8 * static_cast<double>(rng() % 100) / 100.0;
        GraphWithTD kt = gen_partial_k_tree(n, k, keep, rng());
        CliqueSumDecomposition d = treedecomp_to_cliquesums(kt.graph, kt.td);
        ASSERT_TRUE(structural_violations(d).empty()) << "trial " << trial;
        EXPECT_LE(d.adhesion(), k);
        for (const Piece& p : d.pieces) {
            EXPECT_EQ(p.kind.tag == PieceKindTag::Complete, p.graph.is_complete());
            EXPECT_LE(p.graph.vertex_count(), k + 1);
            for (VertexId a : p.parent_clique)
                for (VertexId b : p.parent_clique)
                    if (a < b) {
                        EXPECT_TRUE(p.graph.has_edge(a, b));
                    }
        }
        Graph back = reconstruct(d);
        EXPECT_EQ(back.edges(), kt.graph.edges()) << "trial " << trial;
        EXPECT_EQ(back.vertices(), kt.graph.vertices());
    }
}

TEST(GreedyTreeDecomposition, Examples)
{
    Graph tree = make_graph({{0, 1}, {1, 2}, {1, 3}, {3, 4}});
    EXPECT_EQ(greedy_tree_decomposition(tree).width(), 1);
    Graph c5 = make_graph({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    EXPECT_EQ(greedy_tree_decomposition(c5).width(), 2);
    EXPECT_EQ(brute_force_treewidth(c5), 2);
    EXPECT_EQ(greedy_tree_decomposition(complete(5)).width(), 4);
}

TEST(GreedyTreeDecomposition, ValidAndNeverBelowTreewidth)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        Graph g = random_graph(rng, 4 + trial % 5, 0.3 + 0.1 * (trial % 5));
        TreeDecomposition td = greedy_tree_decomposition(g);
        EXPECT_TRUE(validate_tree_decomposition(g, td).ok());
        EXPECT_GE(td.width(), brute_force_treewidth(g));
    }
}

TEST(TreewidthAtMost, MatchesBruteForce)
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        Graph g = random_graph(rng, 5 + trial % 4, 0.5);
        long tw = brute_force_treewidth(g);
        for (std::size_t t = 1; t <= 4; ++t) {
            auto r = treewidth_at_most(g, t);
            ASSERT_TRUE(r);
            EXPECT_EQ(*r, tw <= static_cast<long>(t)) << "trial " << trial << " t " << t;
        }
    }
}

TEST(NormalizePlanarPieces, StackedTriangulationSplits)
{
    Graph g = complete(4);
    for (std::uint32_t v : {0u, 1u, 2u}) g.add_edge(V(4), V(v));
    CliqueSumDecomposition d = normalize_planar_pieces(planar_single(g));
    EXPECT_EQ(d.pieces.size(), 2u);
    for (const Piece& p : d.pieces) {
        EXPECT_EQ(p.kind.tag, PieceKindTag::PlanarNoSepTriangle);
        EXPECT_TRUE(brute_separating_triangles(p.graph).empty());
    }
    EXPECT_EQ(reconstruct(d), g);
}

TEST(NormalizePlanarPieces, CleanPieceUnchanged)
{
    Graph octa = make_graph({{0, 1}, {0, 2}, {0, 3}, {0, 4}, {5, 1}, {5, 2}, {5, 3}, {5, 4}, {1, 2}, {2, 3}, {3, 4}, {4, 1}});
    CliqueSumDecomposition d = normalize_planar_pieces(planar_single(octa));
    ASSERT_EQ(d.pieces.size(), 1u);
    EXPECT_EQ(d.pieces[0].graph, octa);
    EXPECT_EQ(d.pieces[0].kind.tag, PieceKindTag::PlanarNoSepTriangle);
}

TEST(NormalizePlanarPieces, DoubleStackSplitsTwice)
{
    Graph g = double_stack();
    EXPECT_EQ(brute_separating_triangles(g).size(), 2u);
    CliqueSumDecomposition d = normalize_planar_pieces(planar_single(g));
    EXPECT_EQ(d.pieces.size(), 3u);
    EXPECT_TRUE(structural_violations(d).empty());
    for (const Piece& p : d.pieces) EXPECT_TRUE(brute_separating_triangles(p.graph).empty());
    EXPECT_EQ(reconstruct(d), g);
    EXPECT_TRUE(validate_decomposition(d, g, 3, 3).ok());
}

TEST(NormalizePlanarPieces, RandomTriangulationsAndJoins)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Graph g = gen_triangulation(10 + seed, seed);
        CliqueSumDecomposition d = normalize_planar_pieces(planar_single(g));
        std::size_t total = 0;
        for (const Piece& p : d.pieces) {
            EXPECT_TRUE(brute_separating_triangles(p.graph).empty());
            total += p.graph.vertex_count();
        }
        EXPECT_EQ(total, g.vertex_count() + 3 * (d.pieces.size() - 1));
        EXPECT_EQ(reconstruct(d), g);
    }
    // A planar child of a treewidth piece keeps its join after splitting.
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto gd = gen_cliquesum_decomposition(6, 90, seed);
        for (Piece& p : gd.decomposition.pieces)
            if (p.kind.tag == PieceKindTag::PlanarNoSepTriangle) p.kind = PieceKind::planar();
        CliqueSumDecomposition d = normalize_planar_pieces(gd.decomposition);
        EXPECT_EQ(reconstruct(d), gd.graph);
        EXPECT_TRUE(validate_decomposition(d, gd.graph, 3, 3).ok());
    }
    CliqueSumDecomposition bad = planar_single(complete(5));
    EXPECT_THROW(normalize_planar_pieces(bad), GraphError);
}

TEST(ValidateDecomposition, Examples)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto gd = gen_cliquesum_decomposition(5, 60, seed, 1.0);
        EXPECT_TRUE(validate_decomposition(gd.decomposition, gd.graph, 3, 3).ok());
    }
    Graph g = complete(4);
    for (std::uint32_t v : {0u, 1u, 2u}) g.add_edge(V(4), V(v));
    CliqueSumDecomposition d = planar_single(g);
    d.pieces[0].kind = PieceKind::planar_clean();
    EXPECT_TRUE(mentions(validate_decomposition(d, g, 3, 3).violations, "separating triangle"));

    CliqueSumDecomposition wide;
    Piece a, b;
    a.graph = complete(5);
    a.kind = PieceKind::complete();
    b.graph = complete(5);
    b.kind = PieceKind::complete();
    b.parent = 0;
    b.parent_clique = {V(0), V(1), V(2), V(3)};
    b.graph.remove_vertex(V(4));
    b.graph.add_edge(V(9), V(0));
    b.graph.add_edge(V(9), V(1));
    b.graph.add_edge(V(9), V(2));
    b.graph.add_edge(V(9), V(3));
    wide.pieces = {a, b};
    auto rep = validate_decomposition(wide, reconstruct(wide), 3, 4);
    EXPECT_TRUE(mentions(rep.violations, "adhesion 4"));
    EXPECT_TRUE(validate_decomposition(wide, reconstruct(wide), 4, 4).ok());
}

TEST(ValidateDecomposition, TreewidthClaimsCheckedExactlyOrByCertificate)
{
    CliqueSumDecomposition d;
    Piece p;
    p.graph = complete(5);
    p.kind = PieceKind::bounded_treewidth(3);
    d.pieces.push_back(p);
    EXPECT_TRUE(mentions(validate_decomposition(d, complete(5), 3, 3).violations, "treewidth exceeds 3"));
    d.pieces[0].kind = PieceKind::bounded_treewidth(4);
    EXPECT_TRUE(validate_decomposition(d, complete(5), 3, 4).ok());
    d.pieces[0].graph = complete(7);
    d.pieces[0].kind = PieceKind::bounded_treewidth(6);
    EXPECT_TRUE(mentions(validate_decomposition(d, complete(7), 3, 6).violations, "certificate"));
    d.pieces[0].certificate = td_of({{0, 1, 2, 3, 4, 5, 6}}, {});
    EXPECT_TRUE(validate_decomposition(d, complete(7), 3, 6).ok());
    d.pieces[0].kind = PieceKind::bounded_treewidth(5);
    EXPECT_FALSE(validate_decomposition(d, complete(7), 3, 6).ok());
}

// Validation accepts exactly what the single-crossing pipeline can draw.
TEST(ValidateDecomposition, FuzzAgainstThePipeline)
{
    std::mt19937_64 rng(314);
    int accepted = 0, rejected = 0;
    for (int trial = 0; trial < 40; ++trial) {
        auto gd = gen_cliquesum_decomposition(4, 36, rng());
        CliqueSumDecomposition d = gd.decomposition;
        std::size_t i = rng() % d.pieces.size();
        Piece& p = d.pieces[i];
        switch (rng() % 6) {
        case 0: // drop a piece edge
            if (p.graph.edge_count() > 0) {
                auto es = p.graph.edges();
                const VertexPair& e = es[rng() % es.size()];
                p.graph.remove_edge(e.first, e.second);
            }
            break;
        case 1: // forget a deletion or invent one
            if (!p.deletions.empty()) p.deletions.erase(p.deletions.begin());
            else if (p.parent_clique.size() >= 2)
                p.deletions.emplace(*p.parent_clique.begin(), *std::next(p.parent_clique.begin()));
            break;
        case 2: // weaken a tag in a way that stays valid
            if (p.kind.tag == PieceKindTag::PlanarNoSepTriangle) p.kind = PieceKind::planar();
            else p.kind = PieceKind::bounded_treewidth(4);
            break;
        case 3: // claim a tag that may be false
            p.kind = p.kind.tag == PieceKindTag::Treewidth ? PieceKind::planar_clean() : PieceKind::bounded_treewidth(2);
            p.certificate.reset();
            break;
        case 4: // no change
            break;
        default: // rename the parent
            if (p.parent && *p.parent > 0) p.parent = *p.parent - 1;
            break;
        }
        std::size_t t = 3;
        for (const Piece& q : d.pieces)
            if (q.kind.tag == PieceKindTag::Treewidth) t = std::max(t, q.kind.treewidth);
        bool ok = validate_decomposition(d, gd.graph, 3, t).ok();
        if (ok) {
            ++accepted;
            ComposeResult r;
            EXPECT_NO_THROW(r = draw_single_crossing_free(gd.graph, d, 1)) << "trial " << trial;
            EXPECT_TRUE(r.report.ok()) << "trial " << trial;
        } else {
            ++rejected;
            EXPECT_THROW(draw_single_crossing_free(gd.graph, d, 1), ComposeError) << "trial " << trial;
        }
    }
    EXPECT_GT(accepted, 5);
    EXPECT_GT(rejected, 5);
}

TEST(Decompose, AnyGraphRoundTrips)
{
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        Graph g = random_graph(rng, 8 + trial % 10, 0.3);
        CliqueSumDecomposition d = decompose(g);
        EXPECT_TRUE(structural_violations(d).empty());
        EXPECT_EQ(reconstruct(d), g);
    }
}
