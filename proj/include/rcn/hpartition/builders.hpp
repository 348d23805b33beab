#pragma once

#include "rcn/hpartition/hpartition.hpp"

namespace rcn {

/// A blowup realized as a multigraph together with an H-partition of it.
struct PartitionBuild {
    Multigraph k;
    HPartition partition;
};

namespace detail {

inline VertexId first_unused(const SimplicialBlowup& q)
{
    std::uint32_t next = 0;
    for (VertexId v : q.base().vertices()) next = std::max(next, v.value + 1);
    for (const auto& [u, a] : q.attachments()) next = std::max(next, u.value + 1);
    return VertexId{next};
}

/// Every base vertex and every added vertex of the blowup as its own bag.
inline PartitionBuild solitary_partition(const SimplicialBlowup& q)
{
    PartitionBuild b;
    b.k = q.realize();
    for (VertexId v : q.base().vertices()) {
        b.partition.quotient.add_vertex(v);
        b.partition.bags[v] = {v};
    }
    for (const VertexPair& e : q.base().edges()) b.partition.quotient.add_edge(e.first, e.second);
    return b;
}

} // namespace detail

/// Partition for a blowup of a planar graph whose 3-attachments sit on facial
/// triangles: one face vertex per used triangle holding every added vertex on
/// it, and every other vertex solitary. If the base is a subgraph of a larger
/// planar host, the host must lack separating triangles instead: triangles
/// facial in the host stay facial in the base.
inline PartitionBuild build_planar_blowup_partition(const SimplicialBlowup& q, const Graph* host = nullptr)
{
    const Graph& g = q.base();
    if (host) {
        for (VertexId v : g.vertices())
            if (!host->has_vertex(v)) throw PartitionError("planar blowup: base vertex missing from host");
        for (const VertexPair& e : g.edges())
            if (!host->has_edge(e.first, e.second)) throw PartitionError("planar blowup: base is not a subgraph of the host");
    }
    const Graph& judge = host ? *host : g;
    if (!is_planar(judge)) throw PartitionError("planar blowup: base graph is not planar");
    if (!find_separating_triangles(judge).empty())
        throw PartitionError("planar blowup: base graph has a separating triangle");

    PartitionBuild b = detail::solitary_partition(q);
    Graph& h = b.partition.quotient;
    VertexId next = detail::first_unused(q);
    std::map<VertexSet, VertexId> face_vertex;
    for (const auto& [u, a] : q.attachments()) {
        VertexSet c = a.clique();
        if (c.size() > 3) throw PartitionError("planar blowup: attachment larger than a triangle");
        if (c.size() == 3) {
            auto [it, fresh] = face_vertex.try_emplace(c, next);
            if (fresh) {
                next = fresh_vertex_after(next);
                h.add_vertex(it->second);
                for (VertexId v : c) h.add_edge(it->second, v);
            }
            b.partition.bags[it->second].insert(u);
            continue;
        }
        h.add_vertex(u);
        for (VertexId v : c) h.add_edge(u, v);
        b.partition.bags[u] = {u};
    }
    if (auto r = planar_embedding(h); std::holds_alternative<NotPlanar>(r))
        throw PartitionError("planar blowup: quotient is not planar; some 3-attachment is not a facial triangle");
    return b;
}

/// Two-bag partition: B_v is a single base vertex of maximum degree in the
/// blowup (ties to the smallest id), B_w holds the rest of the base, and every
/// added vertex is solitary and adjacent in H to both v and w.
inline PartitionBuild build_two_bag_partition(const SimplicialBlowup& q)
{
    const Graph& g = q.base();
    if (g.vertex_count() < 2) {
        // A single base vertex: the blowup is a star, drawn as its own quotient.
        PartitionBuild b = detail::solitary_partition(q);
        for (const auto& [u, a] : q.attachments()) {
            b.partition.quotient.add_vertex(u);
            for (VertexId v : a.clique()) b.partition.quotient.add_edge(u, v);
            b.partition.bags[u] = {u};
        }
        return b;
    }
    PartitionBuild b;
    b.k = q.realize();
    std::optional<VertexId> x;
    for (VertexId v : g.vertices())
        if (!x || b.k.degree(v) > b.k.degree(*x)) x = v;
    VertexId w = detail::first_unused(q);
    Graph& h = b.partition.quotient;
    h.add_edge(*x, w);
    b.partition.bags[*x] = {*x};
    for (VertexId v : g.vertices())
        if (v != *x) b.partition.bags[w].insert(v);
    for (const auto& [u, a] : q.attachments()) {
        h.add_edge(u, *x);
        h.add_edge(u, w);
        b.partition.bags[u] = {u};
    }
    return b;
}

/// Partition with quotient H = base: every added vertex joins the bag of the
/// smallest vertex of its attachment clique. Added vertices with an empty
/// attachment become isolated solitary bags.
inline PartitionBuild build_absorbing_partition(const SimplicialBlowup& q)
{
    PartitionBuild b = detail::solitary_partition(q);
    for (const auto& [u, a] : q.attachments()) {
        VertexSet c = a.clique();
        if (c.empty()) {
            b.partition.quotient.add_vertex(u);
            b.partition.bags[u] = {u};
        } else {
            b.partition.bags[*c.begin()].insert(u);
        }
    }
    return b;
}

/// Result of drawing a blowup through an H-partition, with the bounds the
/// construction guarantees and the crossings actually observed.
struct BlowupDrawing {
    PartitionBuild build;
    Drawing quotient_drawing;
    Drawing drawing;
    PartitionStats stats;
    HPartitionGuarantee guarantee;
    CrossingReport crossings;
};

/// Draws K through the partition and checks the part 1 and part 2 bounds.
/// A violated bound throws: it would mean the construction is broken.
inline BlowupDrawing draw_blowup(PartitionBuild build, Drawing quotient_drawing, std::uint64_t seed = 1)
{
    BlowupDrawing out;
    out.stats = partition_stats(build.partition, build.k);
    out.drawing = draw_via_hpartition(build.k, build.partition, quotient_drawing, seed);
    out.guarantee = hpartition_guarantee(build.k, build.partition, quotient_drawing);
    out.crossings = count_crossings(out.drawing);
    if (out.crossings.total > out.guarantee.total)
        throw PartitionError("draw_blowup: " + std::to_string(out.crossings.total) + " crossings exceed the bound " +
                             std::to_string(out.guarantee.total));
    if (out.guarantee.per_edge && out.crossings.max_per_edge() > *out.guarantee.per_edge)
        throw PartitionError("draw_blowup: an edge has " + std::to_string(out.crossings.max_per_edge()) +
                             " crossings, above the per-edge bound " + std::to_string(*out.guarantee.per_edge));
    out.build = std::move(build);
    out.quotient_drawing = std::move(quotient_drawing);
    return out;
}

/// Blowup of a planar graph without separating triangles (or a subgraph of
/// one): at most 3 Delta(Q) crossings per edge.
inline BlowupDrawing draw_planar_blowup(const SimplicialBlowup& q, const Graph* host = nullptr, std::uint64_t seed = 1)
{
    PartitionBuild b = build_planar_blowup_partition(q, host);
    Drawing dh = fary_draw(b.partition.quotient, seed);
    return draw_blowup(std::move(b), std::move(dh), seed);
}

/// Any blowup: at most (|G| - 1) Delta(Q) crossings per edge.
inline BlowupDrawing draw_two_bag_blowup(const SimplicialBlowup& q, std::uint64_t seed = 1)
{
    PartitionBuild b = build_two_bag_partition(q);
    Drawing dh = fary_draw(b.partition.quotient, seed);
    return draw_blowup(std::move(b), std::move(dh), seed);
}

/// Blowup drawn over a given drawing of its base graph.
inline BlowupDrawing draw_absorbing_blowup(const SimplicialBlowup& q, const Drawing& base_drawing,
                                           std::uint64_t seed = 1)
{
    PartitionBuild b = build_absorbing_partition(q);
    Drawing dh;
    for (VertexId v : b.partition.quotient.vertices()) {
        dh.graph.add_vertex(v);
        if (!base_drawing.position.contains(v)) {
            if (q.base().has_vertex(v)) throw PartitionError("draw_absorbing_blowup: base vertex not drawn");
            continue;
        }
        dh.position[v] = base_drawing.at(v);
    }
    for (const VertexPair& e : b.partition.quotient.edges()) dh.graph.add_edge(e.first, e.second);
    // Isolated bags of empty attachments go to fresh spots far from the base.
    Rational far = 1;
    for (const auto& [v, p] : dh.position) far = std::max({far, Rational(abs(p.x)), Rational(abs(p.y))});
    Rational step = 1;
    for (VertexId v : b.partition.quotient.vertices())
        if (!dh.position.contains(v)) {
            dh.position[v] = {Rational(far + step), Rational(far * far + step * step + 3 * step)};
            step += 1;
        }
    if (!is_general_position(dh)) dh = perturb_general_position(dh, crossing_total(dh), seed);
    return draw_blowup(std::move(b), std::move(dh), seed);
}

/// Bounds for a blowup drawn over a base drawing with cr crossings. The
/// lemma's statement and its proof conclude with different exponents; the
/// proof's form is the one asserted, the statement's is reported alongside.
struct AbsorbingBounds {
    std::uint64_t proof = 0;     ///< (Delta+1)^4 cr + Delta^2 ||Q||
    std::uint64_t statement = 0; ///< (Delta+1)^2 cr + Delta^4 ||Q||
};

inline AbsorbingBounds absorbing_bounds(const Multigraph& k, std::uint64_t base_crossings)
{
    std::uint64_t d = k.max_degree();
    std::uint64_t d1 = d + 1;
    std::uint64_t m = k.edge_count();
    AbsorbingBounds b;
    b.proof = d1 * d1 * d1 * d1 * base_crossings + d * d * m;
    b.statement = d1 * d1 * base_crossings + d * d * d * d * m;
    return b;
}

} // namespace rcn
