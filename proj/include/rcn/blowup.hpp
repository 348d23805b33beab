#pragma once

#include "rcn/graph.hpp"

namespace rcn {

/// Neighbourhood of one added vertex: a clique of the base graph with the
/// number of parallel edges to each clique vertex.
struct Attachment {
    std::map<VertexId, std::size_t> multiplicity;

    VertexSet clique() const
    {
        VertexSet out;
        for (const auto& [v, m] : multiplicity) out.insert(v);
        return out;
    }

    std::size_t edge_count() const
    {
        std::size_t n = 0;
        for (const auto& [v, m] : multiplicity) n += m;
        return n;
    }

    friend bool operator==(const Attachment&, const Attachment&) = default;
};

/// A (<= k)-simplicial blowup of a simple graph: an independent set of added
/// vertices, each joined (possibly with parallel edges) to a clique of size at
/// most k, followed by deletion of some edges inside the attachment cliques.
class SimplicialBlowup {
public:
    const Graph& base() const { return base_; }
    const std::map<VertexId, Attachment>& attachments() const { return attachments_; }
    const std::set<VertexPair>& deletions() const { return deletions_; }
    std::size_t k() const { return k_; }

    VertexSet added() const
    {
        VertexSet out;
        for (const auto& [u, a] : attachments_) out.insert(u);
        return out;
    }

    /// The blowup as a multigraph. Base edges come first in sorted order, then
    /// the attachment edges of each added vertex in id order.
    Multigraph realize() const
    {
        Multigraph q;
        for (VertexId v : base_.vertices()) q.add_vertex(v);
        for (const auto& [u, a] : attachments_) q.add_vertex(u);
        for (const VertexPair& e : base_.edges())
            if (!deletions_.contains(e)) q.add_edge(e.first, e.second);
        for (const auto& [u, a] : attachments_)
            for (const auto& [v, m] : a.multiplicity)
                for (std::size_t c = 0; c < m; ++c) q.add_edge(u, v);
        return q;
    }

    friend SimplicialBlowup make_blowup(Graph base, std::map<VertexId, Attachment> attachments,
                                        std::set<VertexPair> deletions, std::size_t k);

private:
    Graph base_;
    std::map<VertexId, Attachment> attachments_;
    std::set<VertexPair> deletions_;
    std::size_t k_ = 0;
};

/// Validates and builds a blowup. Throws GraphError on any violated precondition.
inline SimplicialBlowup make_blowup(Graph base, std::map<VertexId, Attachment> attachments,
                                    std::set<VertexPair> deletions, std::size_t k)
{
    if (k == 0) throw GraphError("blowup: k must be positive");
    for (const auto& [u, a] : attachments) {
        if (base.has_vertex(u)) throw GraphError("blowup: added vertex " + to_string(u) + " already in base graph");
        if (a.multiplicity.size() > k)
            throw GraphError("blowup: attachment of " + to_string(u) + " has size " +
                             std::to_string(a.multiplicity.size()) + " > k");
        for (const auto& [v, m] : a.multiplicity)
            if (m == 0) throw GraphError("blowup: zero multiplicity on " + to_string(u) + "-" + to_string(v));
        if (!base.is_clique(a.clique())) throw GraphError("blowup: attachment of " + to_string(u) + " is not a clique");
    }
    for (const VertexPair& e : deletions) {
        if (!base.has_edge(e.first, e.second))
            throw GraphError("blowup: deleted edge " + to_string(e.first) + "-" + to_string(e.second) + " not in base");
        bool inside = false;
        for (const auto& [u, a] : attachments)
            if (a.multiplicity.contains(e.first) && a.multiplicity.contains(e.second)) inside = true;
        if (!inside)
            throw GraphError("blowup: deleted edge " + to_string(e.first) + "-" + to_string(e.second) +
                             " outside every attachment clique");
    }
    SimplicialBlowup b;
    b.base_ = std::move(base);
    b.attachments_ = std::move(attachments);
    b.deletions_ = std::move(deletions);
    b.k_ = k;
    return b;
}

} // namespace rcn
