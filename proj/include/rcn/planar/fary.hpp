#pragma once

#include <boost/graph/chrobak_payne_drawing.hpp>
#include <boost/graph/make_biconnected_planar.hpp>
#include <boost/graph/make_connected.hpp>
#include <boost/graph/make_maximal_planar.hpp>
#include <boost/graph/planar_canonical_ordering.hpp>

#include "rcn/geometry/general_position.hpp"
#include "rcn/planar/embedding.hpp"

namespace rcn {

namespace detail {

struct GridCoord {
    std::size_t x;
    std::size_t y;
};

/// Shift-method grid drawing of a planar graph with at least three vertices,
/// after augmenting to a triangulation. Augmentation edges are not returned.
inline std::map<VertexId, Point> grid_drawing(const Graph& graph)
{
    Indexed ix = to_boost(graph);
    BoostEmbedding emb;
    make_connected(ix.g);
    reindex_edges(ix.g);
    if (!boost_embed(ix.g, emb)) throw GeometryError("fary_draw: graph is not planar");
    make_biconnected_planar(ix.g, &emb[0]);
    reindex_edges(ix.g);
    if (!boost_embed(ix.g, emb)) throw GeometryError("fary_draw: augmentation lost planarity");
    make_maximal_planar(ix.g, &emb[0]);
    reindex_edges(ix.g);
    if (!boost_embed(ix.g, emb)) throw GeometryError("fary_draw: triangulation lost planarity");

    std::vector<boost::graph_traits<BoostGraph>::vertex_descriptor> ordering;
    boost::planar_canonical_ordering(ix.g, &emb[0], std::back_inserter(ordering));
    std::vector<GridCoord> coords(boost::num_vertices(ix.g));
    auto coord_map = boost::make_iterator_property_map(coords.begin(), boost::get(boost::vertex_index, ix.g));
    auto emb_map = boost::make_iterator_property_map(emb.begin(), boost::get(boost::vertex_index, ix.g));
    boost::chrobak_payne_straight_line_drawing(ix.g, emb_map, ordering.begin(), ordering.end(), coord_map);
    std::map<VertexId, Point> out;
    for (std::size_t i = 0; i < ix.names.size(); ++i)
        out[ix.names[i]] = {Rational(static_cast<unsigned long>(coords[i].x)),
                            Rational(static_cast<unsigned long>(coords[i].y))};
    return out;
}

} // namespace detail

/// Crossing-free straight-line drawing in general position: canonical
/// ordering shift drawing of a triangulated supergraph, augmentation removed,
/// then a verified perturbation with crossing budget zero.
inline Drawing fary_draw(const Graph& g, std::uint64_t seed = 1)
{
    Drawing d;
    d.graph = Multigraph::from_graph(g);
    auto vs = g.vertices();
    if (vs.size() >= 3) {
        d.position = detail::grid_drawing(g);
    } else {
        for (std::size_t i = 0; i < vs.size(); ++i) d.position[vs[i]] = make_point(static_cast<long>(i), 0);
    }
    Drawing out = perturb_general_position(d, 0, seed);
    if (crossing_total(out) != 0) throw GeometryError("fary_draw: drawing has crossings");
    return out;
}

/// Overload taking an embedding; it is validated against g, but the drawing
/// is computed from the embedding of the triangulated supergraph.
inline Drawing fary_draw(const Graph& g, const RotationSystem& r, std::uint64_t seed = 1)
{
    auto problems = rotation_violations(g, r);
    if (!problems.empty()) throw GeometryError("fary_draw: " + problems.front());
    return fary_draw(g, seed);
}

} // namespace rcn
