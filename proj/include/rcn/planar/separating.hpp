#pragma once

#include <array>

#include "rcn/planar/embedding.hpp"

namespace rcn {

using Triangle = std::array<VertexId, 3>; ///< sorted

/// All triangles of g, each sorted, in lexicographic order.
inline std::vector<Triangle> triangles(const Graph& g)
{
    std::vector<Triangle> out;
    for (const VertexPair& e : g.edges())
        for (VertexId w : g.neighbours(e.second))
            if (e.second < w && g.has_edge(e.first, w)) out.push_back({e.first, e.second, w});
    std::sort(out.begin(), out.end());
    return out;
}

/// Components of the triangle's own component after removing the triangle.
inline std::vector<std::vector<VertexId>> components_without(const Graph& g, const Triangle& t)
{
    VertexSet removed(t.begin(), t.end());
    VertexSet reach;
    std::vector<VertexId> stack(t.begin(), t.end());
    reach.insert(t.begin(), t.end());
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (VertexId u : g.neighbours(v))
            if (reach.insert(u).second) stack.push_back(u);
    }
    for (VertexId v : t) reach.erase(v);
    return connected_components(induced_subgraph(g, reach));
}

inline bool is_separating_triangle(const Graph& g, const Triangle& t)
{
    return components_without(g, t).size() >= 2;
}

/// Triangles whose removal disconnects their component. Throws on non-planar input.
inline std::vector<Triangle> find_separating_triangles(const Graph& g)
{
    if (!is_planar(g)) throw GraphError("find_separating_triangles: graph is not planar");
    std::vector<Triangle> out;
    for (const Triangle& t : triangles(g))
        if (is_separating_triangle(g, t)) out.push_back(t);
    return out;
}

/// Splits g at a separating triangle: the first part is the triangle plus the
/// component holding the smallest remaining vertex; the second part is the
/// triangle plus everything else.
inline std::pair<Graph, Graph> split_at_separating_triangle(const Graph& g, const Triangle& t)
{
    for (VertexId v : t)
        if (!g.has_vertex(v)) throw GraphError("split_at_separating_triangle: unknown vertex " + to_string(v));
    if (!g.is_clique(VertexSet(t.begin(), t.end())))
        throw GraphError("split_at_separating_triangle: not a triangle");
    auto comps = components_without(g, t);
    if (comps.size() < 2) throw GraphError("split_at_separating_triangle: triangle is not separating");
    VertexSet first(t.begin(), t.end());
    first.insert(comps.front().begin(), comps.front().end());
    VertexSet second;
    for (VertexId v : g.vertices())
        if (!first.contains(v)) second.insert(v);
    second.insert(t.begin(), t.end());
    return {induced_subgraph(g, first), induced_subgraph(g, second)};
}

} // namespace rcn
