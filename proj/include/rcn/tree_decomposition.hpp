#pragma once

#include "rcn/graph.hpp"

namespace rcn {

/// Bags indexed by id, connected by tree edges.
struct TreeDecomposition {
    std::map<std::size_t, VertexSet> bags;
    std::vector<std::pair<std::size_t, std::size_t>> tree_edges;

    /// Largest bag size minus one; -1 for an empty decomposition.
    long width() const
    {
        long w = -1;
        for (const auto& [id, bag] : bags) w = std::max(w, static_cast<long>(bag.size()) - 1);
        return w;
    }

    std::size_t adhesion() const
    {
        std::size_t a = 0;
        for (auto [x, y] : tree_edges) {
            std::size_t common = 0;
            for (VertexId v : bags.at(x))
                if (bags.at(y).contains(v)) ++common;
            a = std::max(a, common);
        }
        return a;
    }

    std::map<std::size_t, std::vector<std::size_t>> adjacency() const
    {
        std::map<std::size_t, std::vector<std::size_t>> adj;
        for (const auto& [id, bag] : bags) adj[id];
        for (auto [x, y] : tree_edges) {
            adj[x].push_back(y);
            adj[y].push_back(x);
        }
        return adj;
    }

    friend bool operator==(const TreeDecomposition&, const TreeDecomposition&) = default;
};

} // namespace rcn
