#pragma once

#include <map>
#include <vector>

#include "rcn/geometry/predicates.hpp"
#include "rcn/graph.hpp"

namespace rcn {

/// Straight-line drawing of a multigraph: every vertex is a point, every edge
/// the segment between its endpoints.
struct Drawing {
    Multigraph graph;
    std::map<VertexId, Point> position;

    const Point& at(VertexId v) const
    {
        auto it = position.find(v);
        if (it == position.end()) throw GeometryError("no position for vertex " + to_string(v));
        return it->second;
    }

    Segment segment(EdgeId e) const
    {
        const VertexPair& p = graph.endpoints(e);
        return {at(p.first), at(p.second)};
    }

    friend bool operator==(const Drawing&, const Drawing&) = default;
};

/// Problems with the basic drawing invariants (missing or shared positions).
inline std::vector<std::string> drawing_violations(const Drawing& d)
{
    std::vector<std::string> out;
    std::map<Point, VertexId> seen;
    for (VertexId v : d.graph.vertices()) {
        auto it = d.position.find(v);
        if (it == d.position.end()) {
            out.push_back("vertex " + to_string(v) + " has no position");
            continue;
        }
        auto [slot, fresh] = seen.emplace(it->second, v);
        if (!fresh)
            out.push_back("vertices " + to_string(slot->second) + " and " + to_string(v) + " share position " +
                          to_string(it->second));
    }
    for (const auto& [v, p] : d.position)
        if (!d.graph.has_vertex(v)) out.push_back("position given for unknown vertex " + to_string(v));
    return out;
}

inline void require_valid_drawing(const Drawing& d, const std::string& where)
{
    auto problems = drawing_violations(d);
    if (!problems.empty()) throw GeometryError(where + ": " + problems.front());
}

/// Axis-aligned box, used as an exact prefilter.
struct Box {
    Rational xmin, ymin, xmax, ymax;

    static Box of(const Point& a, const Point& b)
    {
        return {std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)};
    }

    bool intersects(const Box& o) const
    {
        return !(o.xmin > xmax || o.xmax < xmin || o.ymin > ymax || o.ymax < ymin);
    }

    bool contains(const Point& p) const { return xmin <= p.x && p.x <= xmax && ymin <= p.y && p.y <= ymax; }

    void expand(const Point& p)
    {
        if (p.x < xmin) xmin = p.x;
        if (p.x > xmax) xmax = p.x;
        if (p.y < ymin) ymin = p.y;
        if (p.y > ymax) ymax = p.y;
    }

    Box grown(const Rational& r) const
    {
        return {Rational(xmin - r), Rational(ymin - r), Rational(xmax + r), Rational(ymax + r)};
    }
};

/// Drawing coordinates scaled by a common denominator so that exact
/// predicates run on integers.
struct IntegerFrame {
    Integer scale = 1;
    std::map<VertexId, IntPoint> position;
};

inline IntegerFrame integer_frame(const std::map<VertexId, Point>& position)
{
    IntegerFrame f;
    for (const auto& [v, p] : position) {
        mpz_lcm(f.scale.get_mpz_t(), f.scale.get_mpz_t(), p.x.get_den_mpz_t());
        mpz_lcm(f.scale.get_mpz_t(), f.scale.get_mpz_t(), p.y.get_den_mpz_t());
    }
    for (const auto& [v, p] : position) {
        Integer x = p.x.get_num() * (f.scale / p.x.get_den());
        Integer y = p.y.get_num() * (f.scale / p.y.get_den());
        f.position.emplace(v, IntPoint{x, y});
    }
    return f;
}

/// Distinct segments of a drawing: one entry per vertex pair carrying edges,
/// with the ids of all its parallel copies.
struct SegmentGroup {
    VertexPair ends;
    std::vector<EdgeId> copies;
};

inline std::vector<SegmentGroup> segment_groups(const Multigraph& g)
{
    std::map<VertexPair, std::vector<EdgeId>> by_pair;
    for (const auto& [id, p] : g.edges()) by_pair[p].push_back(id);
    std::vector<SegmentGroup> out;
    out.reserve(by_pair.size());
    for (auto& [p, ids] : by_pair) out.push_back({p, std::move(ids)});
    return out;
}

} // namespace rcn
