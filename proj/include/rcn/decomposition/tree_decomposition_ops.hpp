#pragma once

#include <deque>
#include <optional>

#include "rcn/cliquesum.hpp"
#include "rcn/tree_decomposition.hpp"

namespace rcn {

struct TreeDecompositionReport {
    std::vector<std::string> violations;
    long width = -1;
    std::size_t adhesion = 0;
    bool ok() const { return violations.empty(); }
};

/// Checks that td is a tree decomposition of g: the bag graph is a tree,
/// every vertex and edge is covered, and every vertex's bags are connected.
inline TreeDecompositionReport validate_tree_decomposition(const Graph& g, const TreeDecomposition& td)
{
    TreeDecompositionReport rep;
    for (auto [x, y] : td.tree_edges)
        if (!td.bags.contains(x) || !td.bags.contains(y)) {
            rep.violations.push_back("tree edge " + std::to_string(x) + "-" + std::to_string(y) + " names a missing bag");
            return rep;
        }
    rep.width = td.width();
    rep.adhesion = td.adhesion();
    if (td.bags.empty()) {
        if (g.vertex_count() > 0) rep.violations.push_back("no bags for a non-empty graph");
        return rep;
    }
    auto adj = td.adjacency();
    {
        std::set<std::size_t> seen{td.bags.begin()->first};
        std::vector<std::size_t> stack{td.bags.begin()->first};
        while (!stack.empty()) {
            std::size_t x = stack.back();
            stack.pop_back();
            for (std::size_t y : adj[x])
                if (seen.insert(y).second) stack.push_back(y);
        }
        if (seen.size() != td.bags.size()) rep.violations.push_back("bag graph is not connected");
        if (td.tree_edges.size() + 1 != td.bags.size()) rep.violations.push_back("bag graph is not a tree");
    }
    for (const auto& [id, bag] : td.bags)
        for (VertexId v : bag)
            if (!g.has_vertex(v)) rep.violations.push_back("bag " + std::to_string(id) + " holds unknown vertex " + to_string(v));
    std::map<VertexId, std::vector<std::size_t>> where;
    for (const auto& [id, bag] : td.bags)
        for (VertexId v : bag) where[v].push_back(id);
    for (VertexId v : g.vertices())
        if (!where.contains(v)) rep.violations.push_back("vertex " + to_string(v) + " is in no bag");
    for (const VertexPair& e : g.edges()) {
        bool covered = false;
        for (std::size_t id : where[e.first])
            if (td.bags.at(id).contains(e.second)) {
                covered = true;
                break;
            }
        if (!covered) rep.violations.push_back("edge " + to_string(e.first) + "-" + to_string(e.second) + " is not covered");
    }
    for (const auto& [v, ids] : where) {
        std::set<std::size_t> mine(ids.begin(), ids.end());
        std::set<std::size_t> seen{ids.front()};
        std::vector<std::size_t> stack{ids.front()};
        while (!stack.empty()) {
            std::size_t x = stack.back();
            stack.pop_back();
            for (std::size_t y : adj[x])
                if (mine.contains(y) && seen.insert(y).second) stack.push_back(y);
        }
        if (seen.size() != mine.size()) rep.violations.push_back("bags of vertex " + to_string(v) + " are not connected");
    }
    return rep;
}

/// Contracts tree edges whose one bag is contained in the other.
inline TreeDecomposition prune_redundant_bags(TreeDecomposition td)
{
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < td.tree_edges.size(); ++i) {
            auto [x, y] = td.tree_edges[i];
            const VertexSet& bx = td.bags.at(x);
            const VertexSet& by = td.bags.at(y);
            std::size_t keep, drop;
            if (std::includes(by.begin(), by.end(), bx.begin(), bx.end())) {
                keep = y;
                drop = x;
            } else if (std::includes(bx.begin(), bx.end(), by.begin(), by.end())) {
                keep = x;
                drop = y;
            } else {
                continue;
            }
            td.tree_edges.erase(td.tree_edges.begin() + static_cast<long>(i));
            for (auto& [a, b] : td.tree_edges) {
                if (a == drop) a = keep;
                if (b == drop) b = keep;
            }
            td.bags.erase(drop);
            changed = true;
            break;
        }
    }
    return td;
}

/// Bag ids in breadth-first order from a centre bag (minimum eccentricity,
/// ties by smallest id), with the parent of each non-root bag.
inline std::vector<std::pair<std::size_t, std::optional<std::size_t>>> centred_bfs_order(const TreeDecomposition& td)
{
    auto adj = td.adjacency();
    auto bfs = [&](std::size_t root) {
        std::vector<std::pair<std::size_t, std::optional<std::size_t>>> order{{root, std::nullopt}};
        std::map<std::size_t, std::size_t> depth{{root, 0}};
        for (std::size_t i = 0; i < order.size(); ++i) {
            std::size_t x = order[i].first;
            auto nb = adj[x];
            std::sort(nb.begin(), nb.end());
            for (std::size_t y : nb)
                if (!depth.contains(y)) {
                    depth[y] = depth[x] + 1;
                    order.emplace_back(y, x);
                }
        }
        std::size_t ecc = 0;
        for (const auto& [x, d] : depth) ecc = std::max(ecc, d);
        return std::pair{order, ecc};
    };
    std::optional<std::size_t> best;
    std::size_t best_ecc = 0;
    for (const auto& [id, bag] : td.bags) {
        auto [order, ecc] = bfs(id);
        if (!best || ecc < best_ecc) {
            best = id;
            best_ecc = ecc;
        }
        if (td.bags.size() > 400) break; // exhaustive centre search only on small trees
    }
    if (!best) return {};
    return bfs(*best).first;
}

/// Clique-sum decomposition from a tree decomposition: one piece per pruned
/// bag B, namely G[B] plus the edges of every join clique at B, so that each
/// join clique is a clique on both sides. Clique edges absent from g are
/// recorded as deletions at that join.
inline CliqueSumDecomposition treedecomp_to_cliquesums(const Graph& g, const TreeDecomposition& td_in)
{
    auto rep = validate_tree_decomposition(g, td_in);
    if (!rep.ok()) throw GraphError("treedecomp_to_cliquesums: " + rep.violations.front());
    TreeDecomposition td = prune_redundant_bags(td_in);
    auto order = centred_bfs_order(td);
    std::map<std::size_t, std::size_t> index;
    for (std::size_t i = 0; i < order.size(); ++i) index[order[i].first] = i;

    CliqueSumDecomposition d;
    d.pieces.resize(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        const VertexSet& bag = td.bags.at(order[i].first);
        d.pieces[i].graph = induced_subgraph(g, bag);
        if (order[i].second) {
            d.pieces[i].parent = index.at(*order[i].second);
            const VertexSet& pb = td.bags.at(*order[i].second);
            for (VertexId v : bag)
                if (pb.contains(v)) d.pieces[i].parent_clique.insert(v);
        }
    }
    for (std::size_t i = 0; i < d.pieces.size(); ++i) {
        Piece& p = d.pieces[i];
        if (!p.parent) continue;
        Graph& parent = d.pieces[*p.parent].graph;
        const VertexSet& c = p.parent_clique;
        for (auto a = c.begin(); a != c.end(); ++a)
            for (auto b = std::next(a); b != c.end(); ++b) {
                p.graph.ensure_edge(*a, *b);
                parent.ensure_edge(*a, *b);
                if (!g.has_edge(*a, *b)) p.deletions.emplace(*a, *b);
            }
    }
    for (Piece& p : d.pieces) p.kind = p.graph.is_complete() ? PieceKind::complete() : PieceKind::generic();
    return d;
}

/// Min-fill elimination heuristic. Components are chained into one tree.
inline TreeDecomposition greedy_tree_decomposition(const Graph& g)
{
    Graph h = g;
    std::vector<VertexId> order;
    std::map<VertexId, VertexSet> bag_of;
    while (h.vertex_count() > 0) {
        std::optional<VertexId> best;
        std::size_t best_fill = 0, best_deg = 0;
        for (VertexId v : h.vertices()) {
            const VertexSet& nb = h.neighbours(v);
            std::size_t fill = 0;
            for (auto a = nb.begin(); a != nb.end(); ++a)
                for (auto b = std::next(a); b != nb.end(); ++b)
                    if (!h.has_edge(*a, *b)) ++fill;
            if (!best || fill < best_fill || (fill == best_fill && nb.size() < best_deg)) {
                best = v;
                best_fill = fill;
                best_deg = nb.size();
            }
            if (best_fill == 0 && best_deg <= 1) break;
        }
        VertexId v = *best;
        VertexSet nb = h.neighbours(v);
        for (auto a = nb.begin(); a != nb.end(); ++a)
            for (auto b = std::next(a); b != nb.end(); ++b) h.ensure_edge(*a, *b);
        VertexSet bag = nb;
        bag.insert(v);
        bag_of[v] = bag;
        order.push_back(v);
        h.remove_vertex(v);
    }
    std::map<VertexId, std::size_t> pos;
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    TreeDecomposition td;
    for (std::size_t i = 0; i < order.size(); ++i) td.bags[i] = bag_of[order[i]];
    std::optional<std::size_t> last_root;
    for (std::size_t i = 0; i < order.size(); ++i) {
        std::optional<std::size_t> parent;
        for (VertexId u : bag_of[order[i]])
            if (u != order[i] && (!parent || pos[u] < *parent)) parent = pos[u];
        if (parent) {
            td.tree_edges.emplace_back(i, *parent);
        } else {
            if (last_root) td.tree_edges.emplace_back(*last_root, i);
            last_root = i;
        }
    }
    return prune_redundant_bags(td);
}

namespace detail {

struct TreewidthSearch {
    std::size_t t;
    std::size_t budget;
    std::size_t nodes = 0;
    std::set<VertexSet> failed;

    /// Eliminates simplicial and almost-simplicial vertices of degree <= t.
    static void reduce(Graph& h, std::size_t t)
    {
        bool again = true;
        while (again) {
            again = false;
            for (VertexId v : h.vertices()) {
                const VertexSet& nb = h.neighbours(v);
                if (nb.size() > t) continue;
                bool eliminate = h.is_clique(nb);
                if (!eliminate)
                    for (VertexId u : nb) {
                        VertexSet rest = nb;
                        rest.erase(u);
                        if (h.is_clique(rest)) {
                            eliminate = true;
                            break;
                        }
                    }
                if (!eliminate) continue;
                VertexSet copy = nb;
                for (auto a = copy.begin(); a != copy.end(); ++a)
                    for (auto b = std::next(a); b != copy.end(); ++b) h.ensure_edge(*a, *b);
                h.remove_vertex(v);
                again = true;
                break;
            }
        }
    }

    std::optional<bool> run(Graph h)
    {
        if (++nodes > budget) return std::nullopt;
        reduce(h, t);
        if (h.vertex_count() <= t + 1) return true;
        VertexSet key;
        for (VertexId v : h.vertices()) key.insert(v);
        if (failed.contains(key)) return false;
        bool unknown = false;
        for (VertexId v : h.vertices()) {
            const VertexSet& nb = h.neighbours(v);
            if (nb.size() > t) continue;
            Graph next = h;
            VertexSet copy = nb;
            for (auto a = copy.begin(); a != copy.end(); ++a)
                for (auto b = std::next(a); b != copy.end(); ++b) next.ensure_edge(*a, *b);
            next.remove_vertex(v);
            auto r = run(std::move(next));
            if (!r) unknown = true;
            else if (*r) return true;
            if (nodes > budget) return std::nullopt;
        }
        if (unknown) return std::nullopt;
        failed.insert(key);
        return false;
    }
};

} // namespace detail

/// Exact test of treewidth <= t by reduction rules and memoized branching
/// over elimination orders. Returns nothing if the node budget is exhausted.
inline std::optional<bool> treewidth_at_most(const Graph& g, std::size_t t, std::size_t budget = 200000)
{
    detail::TreewidthSearch s{t, budget, 0, {}};
    return s.run(g);
}

} // namespace rcn
