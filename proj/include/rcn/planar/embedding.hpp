#pragma once

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/graph_traits.hpp>

#include <variant>

#include "rcn/graph.hpp"

namespace rcn {

/// Combinatorial embedding: the cyclic order of neighbours around each vertex
/// and a designated outer face, given as its vertex cycle.
struct RotationSystem {
    std::map<VertexId, std::vector<VertexId>> order;
    std::vector<VertexId> outer_face;

    friend bool operator==(const RotationSystem&, const RotationSystem&) = default;
};

enum class KuratowskiKind { K5, K33 };

/// Subdivision of K5 or K3,3 found in a non-planar graph.
struct NotPlanar {
    KuratowskiKind kind;
    std::vector<VertexPair> edges;
};

namespace detail {

using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                         boost::property<boost::vertex_index_t, int>,
                                         boost::property<boost::edge_index_t, int>>;
using BoostEdge = boost::graph_traits<BoostGraph>::edge_descriptor;
using BoostEmbedding = std::vector<std::vector<BoostEdge>>;

struct Indexed {
    BoostGraph g;
    std::vector<VertexId> names;
    std::map<VertexId, int> index;
};

inline void reindex_edges(BoostGraph& g)
{
    int i = 0;
    boost::graph_traits<BoostGraph>::edge_iterator ei, ee;
    for (boost::tie(ei, ee) = boost::edges(g); ei != ee; ++ei) boost::put(boost::edge_index, g, *ei, i++);
}

inline Indexed to_boost(const Graph& graph)
{
    Indexed out;
    out.names = graph.vertices();
    for (std::size_t i = 0; i < out.names.size(); ++i) out.index[out.names[i]] = static_cast<int>(i);
    out.g = BoostGraph(out.names.size());
    for (const VertexPair& e : graph.edges()) boost::add_edge(out.index[e.first], out.index[e.second], out.g);
    reindex_edges(out.g);
    return out;
}

inline bool boost_embed(BoostGraph& g, BoostEmbedding& emb)
{
    emb.assign(boost::num_vertices(g), {});
    return boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = g,
                                               boost::boyer_myrvold_params::embedding = &emb[0]);
}

} // namespace detail

/// Face walks of a rotation system. A dart u->v is followed by v->x where x
/// succeeds u in the cyclic order at v. Each face is the vertex sequence of
/// its walk; every dart lies on exactly one walk.
inline std::vector<std::vector<VertexId>> faces(const RotationSystem& r)
{
    std::map<std::pair<VertexId, VertexId>, std::size_t> pos_in; // (v, u) -> index of u around v
    for (const auto& [v, nb] : r.order)
        for (std::size_t i = 0; i < nb.size(); ++i) pos_in[{v, nb[i]}] = i;
    std::set<std::pair<VertexId, VertexId>> used;
    std::vector<std::vector<VertexId>> out;
    for (const auto& [u0, nb0] : r.order)
        for (VertexId v0 : nb0) {
            if (used.contains({u0, v0})) continue;
            std::vector<VertexId> walk;
            VertexId u = u0, v = v0;
            while (used.insert({u, v}).second) {
                walk.push_back(u);
                const auto& around = r.order.at(v);
                auto it = pos_in.find({v, u});
                if (it == pos_in.end()) throw GraphError("faces: rotation system is not symmetric");
                VertexId x = around[(it->second + 1) % around.size()];
                u = v;
                v = x;
            }
            out.push_back(std::move(walk));
        }
    return out;
}

/// Chooses the outer face: longest walk, ties broken by the smallest vertex.
inline std::vector<VertexId> choose_outer_face(const std::vector<std::vector<VertexId>>& fs)
{
    std::vector<VertexId> best;
    VertexId best_min{};
    for (const auto& f : fs) {
        if (f.empty()) continue;
        VertexId m = *std::min_element(f.begin(), f.end());
        if (best.empty() || f.size() > best.size() || (f.size() == best.size() && m < best_min)) {
            best = f;
            best_min = m;
        }
    }
    return best;
}

inline NotPlanar classify_witness(std::vector<VertexPair> edges)
{
    std::map<VertexId, std::size_t> deg;
    for (const VertexPair& e : edges) {
        ++deg[e.first];
        ++deg[e.second];
    }
    std::size_t deg4 = 0;
    for (const auto& [v, d] : deg)
        if (d >= 4) ++deg4;
    return {deg4 >= 5 ? KuratowskiKind::K5 : KuratowskiKind::K33, std::move(edges)};
}

/// A rotation system for a planar graph, or a Kuratowski subdivision.
inline std::variant<RotationSystem, NotPlanar> planar_embedding(const Graph& graph)
{
    detail::Indexed ix = detail::to_boost(graph);
    detail::BoostEmbedding emb(graph.vertex_count());
    std::vector<detail::BoostEdge> kuratowski;
    bool planar = boost::boyer_myrvold_planarity_test(
        boost::boyer_myrvold_params::graph = ix.g, boost::boyer_myrvold_params::embedding = emb.data(),
        boost::boyer_myrvold_params::kuratowski_subgraph = std::back_inserter(kuratowski));
    if (!planar) {
        std::vector<VertexPair> edges;
        for (const auto& e : kuratowski)
            edges.emplace_back(ix.names[boost::source(e, ix.g)], ix.names[boost::target(e, ix.g)]);
        return classify_witness(std::move(edges));
    }
    RotationSystem r;
    for (std::size_t i = 0; i < ix.names.size(); ++i) {
        auto& around = r.order[ix.names[i]];
        for (const auto& e : emb[i]) {
            auto s = boost::source(e, ix.g);
            auto t = boost::target(e, ix.g);
            around.push_back(ix.names[static_cast<std::size_t>(s) == i ? t : s]);
        }
    }
    r.outer_face = choose_outer_face(faces(r));
    return r;
}

inline bool is_planar(const Graph& g) { return std::holds_alternative<RotationSystem>(planar_embedding(g)); }

/// Checks that r is an embedding of g: neighbour lists match and Euler's
/// formula holds on every component with at least one edge.
inline std::vector<std::string> rotation_violations(const Graph& g, const RotationSystem& r)
{
    std::vector<std::string> out;
    for (VertexId v : g.vertices()) {
        auto it = r.order.find(v);
        if (it == r.order.end()) {
            out.push_back("vertex " + to_string(v) + " missing from rotation system");
            continue;
        }
        VertexSet listed(it->second.begin(), it->second.end());
        if (listed != g.neighbours(v) || listed.size() != it->second.size())
            out.push_back("rotation at " + to_string(v) + " does not match its neighbours");
    }
    if (!out.empty()) return out;
    auto fs = faces(r);
    std::map<VertexId, std::size_t> comp_of;
    auto comps = connected_components(g);
    for (std::size_t i = 0; i < comps.size(); ++i)
        for (VertexId v : comps[i]) comp_of[v] = i;
    std::vector<long> face_count(comps.size(), 0), edge_count(comps.size(), 0);
    for (const auto& f : fs) ++face_count[comp_of[f.front()]];
    for (const VertexPair& e : g.edges()) ++edge_count[comp_of[e.first]];
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (edge_count[i] == 0) continue;
        long euler = static_cast<long>(comps[i].size()) - edge_count[i] + face_count[i];
        if (euler != 2) out.push_back("Euler characteristic " + std::to_string(euler) + " on a component");
    }
    return out;
}

} // namespace rcn
