#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rcn {

/// Raised when a value would violate a structural invariant of a graph type.
class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct VertexId {
    std::uint32_t value = 0;
    friend constexpr auto operator<=>(VertexId, VertexId) = default;
};

struct EdgeId {
    std::uint32_t value = 0;
    friend constexpr auto operator<=>(EdgeId, EdgeId) = default;
};

inline std::string to_string(VertexId v) { return "v" + std::to_string(v.value); }
inline std::string to_string(EdgeId e) { return "e" + std::to_string(e.value); }

/// Unordered vertex pair, stored with first <= second.
struct VertexPair {
    VertexId first;
    VertexId second;

    VertexPair() = default;
    VertexPair(VertexId a, VertexId b) : first(std::min(a, b)), second(std::max(a, b)) {}

    bool contains(VertexId v) const { return first == v || second == v; }
    VertexId other(VertexId v) const { return v == first ? second : first; }
    friend constexpr auto operator<=>(const VertexPair&, const VertexPair&) = default;
};

using VertexSet = std::set<VertexId>;

/// Simple undirected graph: no loops, no parallel edges.
class Graph {
public:
    Graph() = default;

    void add_vertex(VertexId v) { adjacency_.try_emplace(v); }

    /// Adds edge uv; both endpoints are created on demand.
    void add_edge(VertexId u, VertexId v)
    {
        if (u == v) throw GraphError("loop at " + to_string(u));
        auto& nu = adjacency_[u];
        if (nu.contains(v)) throw GraphError("duplicate edge " + to_string(u) + "-" + to_string(v));
        nu.insert(v);
        adjacency_[v].insert(u);
        ++edge_count_;
    }

    /// Adds uv unless already present. Returns true if the edge was new.
    bool ensure_edge(VertexId u, VertexId v)
    {
        if (has_edge(u, v)) return false;
        add_edge(u, v);
        return true;
    }

    void remove_edge(VertexId u, VertexId v)
    {
        if (!has_edge(u, v)) throw GraphError("no edge " + to_string(u) + "-" + to_string(v));
        adjacency_[u].erase(v);
        adjacency_[v].erase(u);
        --edge_count_;
    }

    void remove_vertex(VertexId v)
    {
        auto it = adjacency_.find(v);
        if (it == adjacency_.end()) return;
        for (VertexId u : it->second) adjacency_[u].erase(v);
        edge_count_ -= it->second.size();
        adjacency_.erase(it);
    }

    bool has_vertex(VertexId v) const { return adjacency_.contains(v); }

    bool has_edge(VertexId u, VertexId v) const
    {
        auto it = adjacency_.find(u);
        return it != adjacency_.end() && it->second.contains(v);
    }

    const VertexSet& neighbours(VertexId v) const
    {
        auto it = adjacency_.find(v);
        if (it == adjacency_.end()) throw GraphError("unknown vertex " + to_string(v));
        return it->second;
    }

    std::size_t degree(VertexId v) const { return neighbours(v).size(); }

    std::size_t max_degree() const
    {
        std::size_t best = 0;
        for (const auto& [v, nb] : adjacency_) best = std::max(best, nb.size());
        return best;
    }

    std::size_t vertex_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    std::vector<VertexId> vertices() const
    {
        std::vector<VertexId> out;
        out.reserve(adjacency_.size());
        for (const auto& [v, nb] : adjacency_) out.push_back(v);
        return out;
    }

    /// Edges in lexicographic order of (smaller, larger) endpoint.
    std::vector<VertexPair> edges() const
    {
        std::vector<VertexPair> out;
        out.reserve(edge_count_);
        for (const auto& [v, nb] : adjacency_)
            for (VertexId u : nb)
                if (v < u) out.emplace_back(v, u);
        return out;
    }

    bool is_clique(const VertexSet& s) const
    {
        for (auto a = s.begin(); a != s.end(); ++a) {
            if (!has_vertex(*a)) return false;
            for (auto b = std::next(a); b != s.end(); ++b)
                if (!has_edge(*a, *b)) return false;
        }
        return true;
    }

    bool is_complete() const { return edge_count_ * 2 == vertex_count() * (vertex_count() == 0 ? 0 : vertex_count() - 1); }

    VertexId max_vertex_id() const { return adjacency_.empty() ? VertexId{0} : adjacency_.rbegin()->first; }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::map<VertexId, VertexSet> adjacency_;
    std::size_t edge_count_ = 0;
};

inline Graph induced_subgraph(const Graph& g, const VertexSet& s)
{
    Graph out;
    for (VertexId v : s) {
        if (!g.has_vertex(v)) throw GraphError("induced_subgraph: unknown vertex " + to_string(v));
        out.add_vertex(v);
    }
    for (VertexId v : s)
        for (VertexId u : g.neighbours(v))
            if (v < u && s.contains(u)) out.add_edge(v, u);
    return out;
}

inline Graph complete_graph(const VertexSet& s)
{
    Graph out;
    for (VertexId v : s) out.add_vertex(v);
    for (auto a = s.begin(); a != s.end(); ++a)
        for (auto b = std::next(a); b != s.end(); ++b) out.add_edge(*a, *b);
    return out;
}

/// Connected components, each sorted; components ordered by smallest vertex.
inline std::vector<std::vector<VertexId>> connected_components(const Graph& g)
{
    std::vector<std::vector<VertexId>> out;
    std::set<VertexId> seen;
    for (VertexId start : g.vertices()) {
        if (seen.contains(start)) continue;
        std::vector<VertexId> comp{start};
        seen.insert(start);
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (VertexId u : g.neighbours(comp[i]))
                if (seen.insert(u).second) comp.push_back(u);
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

/// Loopless multigraph. Parallel edges carry distinct EdgeIds.
class Multigraph {
public:
    Multigraph() = default;

    void add_vertex(VertexId v) { incidence_.try_emplace(v); }

    /// Adds an edge with the next free id.
    EdgeId add_edge(VertexId u, VertexId v)
    {
        EdgeId id{next_id_};
        add_edge(id, u, v);
        return id;
    }

    void add_edge(EdgeId id, VertexId u, VertexId v)
    {
        if (u == v) throw GraphError("loop at " + to_string(u));
        if (edges_.contains(id)) throw GraphError("duplicate edge id " + to_string(id));
        edges_.emplace(id, VertexPair(u, v));
        incidence_[u].push_back(id);
        incidence_[v].push_back(id);
        next_id_ = std::max(next_id_, id.value + 1);
    }

    void remove_edge(EdgeId id)
    {
        auto it = edges_.find(id);
        if (it == edges_.end()) throw GraphError("unknown edge " + to_string(id));
        for (VertexId x : {it->second.first, it->second.second}) {
            auto& inc = incidence_[x];
            inc.erase(std::find(inc.begin(), inc.end(), id));
        }
        edges_.erase(it);
    }

    /// Removes v together with its incident edges.
    void remove_vertex(VertexId v)
    {
        auto it = incidence_.find(v);
        if (it == incidence_.end()) return;
        auto inc = it->second;
        for (EdgeId e : inc) remove_edge(e);
        incidence_.erase(v);
    }

    bool has_vertex(VertexId v) const { return incidence_.contains(v); }
    bool has_edge(EdgeId e) const { return edges_.contains(e); }

    const VertexPair& endpoints(EdgeId e) const
    {
        auto it = edges_.find(e);
        if (it == edges_.end()) throw GraphError("unknown edge " + to_string(e));
        return it->second;
    }

    const std::vector<EdgeId>& incident(VertexId v) const
    {
        auto it = incidence_.find(v);
        if (it == incidence_.end()) throw GraphError("unknown vertex " + to_string(v));
        return it->second;
    }

    std::size_t degree(VertexId v) const { return incident(v).size(); }

    VertexSet neighbours(VertexId v) const
    {
        VertexSet out;
        for (EdgeId e : incident(v)) out.insert(endpoints(e).other(v));
        return out;
    }

    std::size_t max_degree() const
    {
        std::size_t best = 0;
        for (const auto& [v, inc] : incidence_) best = std::max(best, inc.size());
        return best;
    }

    std::size_t vertex_count() const { return incidence_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    std::vector<VertexId> vertices() const
    {
        std::vector<VertexId> out;
        out.reserve(incidence_.size());
        for (const auto& [v, inc] : incidence_) out.push_back(v);
        return out;
    }

    const std::map<EdgeId, VertexPair>& edges() const { return edges_; }

    VertexId max_vertex_id() const { return incidence_.empty() ? VertexId{0} : incidence_.rbegin()->first; }

    /// Underlying simple graph (parallel copies collapsed).
    Graph simple() const
    {
        Graph g;
        for (const auto& [v, inc] : incidence_) g.add_vertex(v);
        for (const auto& [id, p] : edges_) g.ensure_edge(p.first, p.second);
        return g;
    }

    /// Multiplicity of every vertex pair that carries at least one edge.
    std::map<VertexPair, std::size_t> multiplicities() const
    {
        std::map<VertexPair, std::size_t> out;
        for (const auto& [id, p] : edges_) ++out[p];
        return out;
    }

    static Multigraph from_graph(const Graph& g)
    {
        Multigraph m;
        for (VertexId v : g.vertices()) m.add_vertex(v);
        for (const VertexPair& p : g.edges()) m.add_edge(p.first, p.second);
        return m;
    }

    friend bool operator==(const Multigraph& a, const Multigraph& b)
    {
        return a.edges_ == b.edges_ && a.vertices() == b.vertices();
    }

private:
    std::map<VertexId, std::vector<EdgeId>> incidence_;
    std::map<EdgeId, VertexPair> edges_;
    std::uint32_t next_id_ = 0;
};

/// Returns the smallest id strictly larger than every id in use by either graph.
inline VertexId fresh_vertex_after(VertexId v) { return VertexId{v.value + 1}; }

} // namespace rcn

template <>
struct std::hash<rcn::VertexId> {
    std::size_t operator()(rcn::VertexId v) const noexcept { return std::hash<std::uint32_t>{}(v.value); }
};

template <>
struct std::hash<rcn::EdgeId> {
    std::size_t operator()(rcn::EdgeId e) const noexcept { return std::hash<std::uint32_t>{}(e.value); }
};
