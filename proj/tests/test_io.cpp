#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rcn/rcn.hpp"

using namespace rcn;
using namespace oracle;

namespace {

std::size_t occurrences(const std::string& s, const std::string& what)
{
    std::size_t n = 0;
    for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
    return n;
}

Drawing square_k4()
{
    Drawing d;
    std::vector<Point> at = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    for (std::uint32_t i = 0; i < 4; ++i) d.position[V(i)] = at[i];
    for (std::uint32_t i = 0; i < 4; ++i)
        for (std::uint32_t j = i + 1; j < 4; ++j) d.graph.add_edge(V(i), V(j));
    return d;
}

std::string two_piece_text()
{
    return "p decomposition 2\n"
           "piece 1 planar-nosep\n"
           "vertices a b c d\n"
           "edge a b\nedge a c\nedge a d\nedge b c\nedge b d\nedge c d\n"
           "piece 2 treewidth 2\n"
           "parent 1\n"
           "clique a b c\n"
           "delete a b\n"
           "vertices a b c e\n"
           "edge a b\nedge a c\nedge a e\nedge b c\nedge c e\n"
           "bag 1 a b c\n"
           "bag 2 a c e\n"
           "link 1 2\n";
}

} // namespace

TEST(GraphFormat, Triangle)
{
    NamedGraph g = parse_graph("p 3 3\nx y\ny z\nz x\n");
    EXPECT_EQ(g.graph.vertex_count(), 3u);
    EXPECT_EQ(g.graph.edge_count(), 3u);
    EXPECT_TRUE(g.graph.is_complete());
    EXPECT_EQ(g.names.name(*g.names.find("z")), "z");
}

TEST(GraphFormat, EmptyGraph)
{
    NamedGraph g = parse_graph("p 0 0\n");
    EXPECT_EQ(g.graph.vertex_count(), 0u);
    EXPECT_EQ(emit_graph(g), "p 0 0\n");
}

TEST(GraphFormat, Errors)
{
    EXPECT_THROW(parse_graph("p 2 2\na b\nb a\n"), FormatError);
    EXPECT_THROW(parse_graph("p 1 1\na a\n"), FormatError);
    EXPECT_THROW(parse_graph("a b\n"), FormatError);
    EXPECT_THROW(parse_graph("p 3 1\na b\n"), FormatError);
    EXPECT_THROW(parse_graph("p 2 2\na b\n"), FormatError);
    try {
        parse_graph("p 3 2\nc comment\na b\nb c d\n");
        FAIL();
    } catch (const FormatError& e) {
        EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
    }
}

TEST(GraphFormat, RoundTripKeepsIdsAndIsolatedVertices)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        GraphWithTD kt = gen_partial_k_tree(30, 3, 0.4, seed);
        NameTable names = NameTable::numbered(kt.graph.vertices());
        std::string text = emit_graph(kt.graph, names);
        NamedGraph back = parse_graph(text);
        EXPECT_EQ(back.graph, kt.graph);
        EXPECT_EQ(emit_graph(back), text);
    }
}

TEST(TdFormat, SingleBagK4)
{
    Graph k4 = make_graph({{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    TreeDecomposition td = parse_td("s td 1 4 4\nb 1 1 2 3 4\n", &k4);
    EXPECT_EQ(td.width(), 3);
}

TEST(TdFormat, PathOfThree)
{
    Graph p3 = make_graph({{0, 1}, {1, 2}});
    TreeDecomposition td = parse_td("c path\ns td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n", &p3);
    EXPECT_EQ(td.width(), 1);
    EXPECT_EQ(td.tree_edges.size(), 1u);
}

TEST(TdFormat, Errors)
{
    Graph p3 = make_graph({{0, 1}, {1, 2}});
    EXPECT_THROW(parse_td("b 1 1 2\n"), FormatError);
    EXPECT_THROW(parse_td("s td 2 2 3\nb 1 1 2\nb 3 2 3\n"), FormatError);
    EXPECT_THROW(parse_td("s td 2 3 3\nb 1 1 2\nb 2 2 3\n1 2\n"), FormatError);
    EXPECT_THROW(parse_td("s td 1 2 3\nb 1 1 4\n"), FormatError);
    EXPECT_THROW(parse_td("s td 2 2 3\nb 1 1 2\nb 2 1 3\n1 2\n", &p3), FormatError);
}

TEST(TdFormat, GeneratedRoundTrip)
{
    for (std::size_t k = 1; k <= 4; ++k) {
        GraphWithTD kt = gen_partial_k_tree(40, k, 0.6, k);
        std::string text = emit_td(kt.td, kt.graph.vertex_count());
        TreeDecomposition td = parse_td(text, &kt.graph);
        EXPECT_EQ(td.bags.size(), kt.td.bags.size());
        EXPECT_EQ(td.width(), kt.td.width());
        EXPECT_EQ(emit_td(td, kt.graph.vertex_count()), text);
    }
}

TEST(DecompositionFormat, TwoPieceRoundTripIsByteIdentical)
{
    NameTable names;
    CliqueSumDecomposition d = parse_decomposition(two_piece_text(), names);
    ASSERT_EQ(d.pieces.size(), 2u);
    EXPECT_EQ(d.pieces[1].kind.tag, PieceKindTag::Treewidth);
    EXPECT_EQ(d.pieces[1].kind.treewidth, 2u);
    EXPECT_EQ(d.pieces[1].deletions.size(), 1u);
    ASSERT_TRUE(d.pieces[1].certificate);
    EXPECT_EQ(emit_decomposition(d, names), two_piece_text());
    Graph g = reconstruct(d);
    EXPECT_EQ(g.vertex_count(), 5u);
    EXPECT_FALSE(g.has_edge(*names.find("a"), *names.find("b")));
}

TEST(DecompositionFormat, Errors)
{
    NameTable names;
    std::string bad_kind = two_piece_text();
    bad_kind.replace(bad_kind.find("planar-nosep"), 12, "toroidal");
    EXPECT_THROW(parse_decomposition(bad_kind, names), FormatError);

    std::string outside = two_piece_text();
    outside.replace(outside.find("delete a b"), 10, "delete a e");
    NameTable n2;
    EXPECT_THROW(parse_decomposition(outside, n2), FormatError);

    std::string count = two_piece_text();
    count.replace(0, 17, "p decomposition 3");
    NameTable n3;
    EXPECT_THROW(parse_decomposition(count, n3), FormatError);

    NameTable n4;
    EXPECT_THROW(parse_decomposition("p decomposition 1\nvertices a\n", n4), FormatError);
}

TEST(DecompositionFormat, GeneratedRoundTrips)
{
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        auto gd = gen_cliquesum_decomposition(6, 80, seed);
        NameTable names = NameTable::numbered(gd.graph.vertices());
        std::string text = emit_decomposition(gd.decomposition, names);
        NameTable back_names = NameTable::numbered(gd.graph.vertices());
        CliqueSumDecomposition back = parse_decomposition(text, back_names);
        EXPECT_EQ(back, gd.decomposition);
        EXPECT_EQ(emit_decomposition(back, back_names), text);
    }
}

TEST(DrawingFormat, SquareK4RoundTripsWithReport)
{
    Drawing d = square_k4();
    NameTable names = NameTable::numbered(d.graph.vertices());
    std::string text = emit_drawing(d, names);
    EXPECT_NE(text.find("crossings 1\n"), std::string::npos);
    DrawingFile f = parse_drawing(text);
    EXPECT_EQ(f.drawing.graph, d.graph);
    EXPECT_EQ(f.drawing.position, d.position);
    EXPECT_EQ(f.claimed_total, 1u);
    EXPECT_EQ(emit_drawing(f.drawing, f.names), text);
}

TEST(DrawingFormat, ExactRationalsSurvive)
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        Drawing d = random_gp_drawing(rng, 9, 0.5);
        for (auto& [v, p] : d.position) {
            p.x = Rational(p.x / 7 - Rational(1, 3));
            p.y = Rational(p.y * Rational(5, 11));
        }
        NameTable names = NameTable::numbered(d.graph.vertices());
        DrawingFile f = parse_drawing(emit_drawing(d, names));
        EXPECT_EQ(f.drawing.position, d.position);
        EXPECT_EQ(crossing_pairs(f.drawing), crossing_pairs(d));
    }
}

TEST(DrawingFormat, TamperAndErrors)
{
    Drawing d = square_k4();
    NameTable names = NameTable::numbered(d.graph.vertices());
    std::string text = emit_drawing(d, names);

    std::string tampered = text;
    tampered.replace(tampered.find("crossings 1"), 11, "crossings 0");
    EXPECT_THROW(parse_drawing(tampered), TamperError);

    std::string moved = text;
    moved.replace(moved.find("v 3 1/1 1/1"), 11, "v 3 1/3 1/3");
    EXPECT_THROW(parse_drawing(moved), TamperError);
    EXPECT_NO_THROW(parse_drawing(emit_drawing(d, names, false)));

    std::string missing = text;
    missing.erase(missing.find("v 4 0/1 1/1\n"), 12);
    EXPECT_THROW(parse_drawing(missing), FormatError);

    std::string noncanonical = text;
    noncanonical.replace(noncanonical.find("v 3 1/1"), 7, "v 3 2/2");
    EXPECT_THROW(parse_drawing(noncanonical), FormatError);

    std::string bare = text;
    bare.replace(bare.find("v 3 1/1"), 7, "v 3 1");
    EXPECT_THROW(parse_drawing(bare), FormatError);

    std::string pair = text;
    pair.replace(pair.find("pair "), 5, "pair 9");
    EXPECT_THROW(parse_drawing(pair), FormatError);
}

TEST(Svg, TriangleHasThreeLinesAndLabels)
{
    Drawing d;
    d.position[V(0)] = {0, 0};
    d.position[V(1)] = {2, 0};
    d.position[V(2)] = {1, 3};
    d.graph.add_edge(V(0), V(1));
    d.graph.add_edge(V(1), V(2));
    d.graph.add_edge(V(0), V(2));
    std::string svg = render_svg(d);
    EXPECT_EQ(occurrences(svg, "<line "), 3u);
    EXPECT_EQ(occurrences(svg, "<text "), 3u);
    EXPECT_EQ(svg, render_svg(d));
}

TEST(Svg, K4MarkerAndEmptyCanvas)
{
    SvgOptions opt;
    opt.crossing_markers = true;
    std::string svg = render_svg(square_k4(), opt);
    EXPECT_EQ(occurrences(svg, "fill=\"red\""), 1u);
    EXPECT_EQ(occurrences(svg, "<circle "), 5u);

    std::string empty = render_svg(Drawing{}, opt);
    EXPECT_EQ(occurrences(empty, "<line "), 0u);
    EXPECT_EQ(occurrences(empty, "<circle "), 0u);
    EXPECT_NE(empty.find("</svg>"), std::string::npos);
}

TEST(ReportJson, CarriesBoundAndCharges)
{
    GraphWithTD kt = gen_partial_k_tree(20, 2, 0.8, 3);
    ComposeResult r = draw_treewidth(kt.graph, kt.td);
    auto j = nlohmann::json::parse(report_json(r.report));
    EXPECT_EQ(j["bound"].get<std::uint64_t>(), r.report.bound);
    EXPECT_EQ(j["observed"].get<std::uint64_t>(), r.report.observed);
    EXPECT_TRUE(j["ok"].get<bool>());
    EXPECT_EQ(j["pieces"].size(), r.report.pieces.size());
    EXPECT_EQ(j["t"].get<std::size_t>(), 2u);
}
