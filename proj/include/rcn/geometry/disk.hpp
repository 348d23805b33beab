#pragma once

#include <optional>

#include "rcn/geometry/general_position.hpp"

namespace rcn {

namespace detail {

struct StarContext {
    VertexId w;
    Point wp;
    std::vector<VertexId> neighbours;              ///< distinct neighbours of w
    std::vector<std::pair<Point, std::optional<VertexId>>> crossings; ///< crossing point, neighbour if on w-edge
};

/// Crossing points between segments whose boxes meet the region.
inline std::vector<std::tuple<Point, VertexPair, VertexPair>> crossings_in_region(const Drawing& d, const Box& region)
{
    std::vector<std::pair<VertexPair, Box>> segs;
    for (const auto& [p, m] : d.graph.multiplicities()) {
        Box b = Box::of(d.at(p.first), d.at(p.second));
        if (b.intersects(region)) segs.emplace_back(p, b);
    }
    std::vector<std::tuple<Point, VertexPair, VertexPair>> out;
    for (std::size_t i = 0; i < segs.size(); ++i)
        for (std::size_t j = i + 1; j < segs.size(); ++j) {
            const VertexPair& s = segs[i].first;
            const VertexPair& t = segs[j].first;
            if (!segs[i].second.intersects(segs[j].second)) continue;
            if (s.contains(t.first) || s.contains(t.second)) continue;
            Segment a{d.at(s.first), d.at(s.second)};
            Segment b{d.at(t.first), d.at(t.second)};
            if (!segments_intersect(a.a, a.b, b.a, b.b)) continue;
            if (orientation(a.a, a.b, b.a) == 0 && orientation(a.a, a.b, b.b) == 0) continue;
            Point x = crossing_point(a, b);
            if (region.contains(x)) out.emplace_back(x, s, t);
        }
    return out;
}

inline bool boxes_share_point(const Box& a, const Box& b, const Box& c)
{
    auto hi = [](const Rational& x, const Rational& y, const Rational& z) -> const Rational& {
        return std::max(x, std::max(y, z));
    };
    auto lo = [](const Rational& x, const Rational& y, const Rational& z) -> const Rational& {
        return std::min(x, std::min(y, z));
    };
    return hi(a.xmin, b.xmin, c.xmin) <= lo(a.xmax, b.xmax, c.xmax) &&
           hi(a.ymin, b.ymin, c.ymin) <= lo(a.ymax, b.ymax, c.ymax);
}

/// Squared distance from w to the ray starting at p pointing away from v.
/// A point p lies in the beam of v into the disk of radius r at w iff this is <= r^2.
inline Rational beam_threshold(const Point& w, const Point& p, const Point& v)
{
    return squared_distance_to_ray(w, p, p - v);
}

} // namespace detail

/// Radius of a disk around w satisfying the replacement conditions: no other
/// vertex inside, no non-incident edge meets it, no vertex or foreign crossing
/// point in any beam, and no piece of an edge between two of its crossings
/// with different w-edges lies inside the beam union. The radius is a power of
/// two strictly below half of every binding distance.
///
/// A beam hull(v, disk) lies within the disk radius of the segment wv, so
/// objects whose boxes miss box(v, w +- r) are skipped without changing the
/// result.
inline Disk safe_disk_radius(const Drawing& d, VertexId w)
{
    const Point& wp = d.at(w);
    std::optional<Rational> best;
    auto bound = [&](const Rational& t) {
        if (!best || t < *best) best = t;
    };
    auto box_distance2 = [&](const Box& b) {
        Rational dx = 0, dy = 0;
        if (wp.x < b.xmin) dx = b.xmin - wp.x;
        else if (wp.x > b.xmax) dx = wp.x - b.xmax;
        if (wp.y < b.ymin) dy = b.ymin - wp.y;
        else if (wp.y > b.ymax) dy = wp.y - b.ymax;
        return Rational(dx * dx + dy * dy);
    };

    for (const auto& [v, p] : d.position)
        if (v != w) bound(squared_distance(p, wp));

    VertexSet nbrs = d.graph.has_vertex(w) ? d.graph.neighbours(w) : VertexSet{};
    std::vector<std::pair<VertexPair, Box>> foreign_segs;
    for (const auto& [p, m] : d.graph.multiplicities()) {
        if (p.contains(w)) continue;
        Box b = Box::of(d.at(p.first), d.at(p.second));
        foreign_segs.emplace_back(p, b);
        if (best && box_distance2(b) >= *best) continue;
        bound(squared_distance_to_segment(wp, d.at(p.first), d.at(p.second)));
    }
    if (!best) return {wp, Rational(1)};
    if (nbrs.empty()) return {wp, largest_pow2_with_square_below(Rational(*best / 4))};

    // r_up^2 >= best throughout; best only decreases from here on.
    const Rational r_up = 2 * largest_pow2_with_square_below(*best);
    std::map<VertexId, Box> beam_box;
    std::map<VertexId, Rational> beam_len2;
    for (VertexId v : nbrs) {
        beam_box[v] = Box::of(d.at(v), wp).grown(r_up);
        beam_len2[v] = squared_distance(d.at(v), wp);
    }
    // A beam of radius rho lies within rho of the segment wv, so a point whose
    // squared distance to the line wv is at least best cannot lower best.
    auto bound_beam = [&](const Point& x, VertexId v) {
        const Point& vp = d.at(v);
        Rational c = cross(vp - wp, x - wp);
        if (c * c >= *best * beam_len2[v]) return;
        bound(detail::beam_threshold(wp, x, vp));
    };

    for (VertexId v : nbrs)
        for (const auto& [u, up] : d.position)
            if (u != w && u != v && beam_box[v].contains(up)) bound_beam(up, v);

    // Crossing points of foreign segments with w-edges, grouped per foreign segment.
    std::vector<std::vector<std::pair<Point, VertexId>>> on_w(foreign_segs.size());
    for (std::size_t i = 0; i < foreign_segs.size(); ++i) {
        const auto& [t, tb] = foreign_segs[i];
        for (VertexId v : nbrs) {
            if (t.contains(v)) continue;
            if (!tb.intersects(Box::of(wp, d.at(v)))) continue;
            const Point& a = d.at(t.first);
            const Point& b = d.at(t.second);
            if (!segments_intersect(wp, d.at(v), a, b)) continue;
            if (orientation(wp, d.at(v), a) == 0 && orientation(wp, d.at(v), b) == 0) continue;
            on_w[i].emplace_back(crossing_point(Segment{wp, d.at(v)}, Segment{a, b}), v);
        }
    }
    // Crossing points on w-edges inside other beams.
    for (const auto& points : on_w)
        for (const auto& [x, vx] : points)
            for (VertexId v : nbrs)
                if (v != vx && beam_box[v].contains(x)) bound_beam(x, v);

    // Crossings between two foreign segments inside a beam: both segments come
    // within r_up of the segment wv. Only the part of a segment inside the
    // strip |cross(v - w, x - w)| <= h around the line wv can hold a crossing
    // that lowers best, where h >= sqrt(best) |v - w|; pairs are filtered by
    // the boxes of those parts. Crossing points are shared between beams.
    std::map<std::pair<std::size_t, std::size_t>, std::optional<Point>> foreign_crossing;
    for (VertexId v : nbrs) {
        const Box& bb = beam_box[v];
        const Point& vp = d.at(v);
        const Point dv = vp - wp;
        const Rational h = 2 * largest_pow2_with_square_below(*best) * (abs(dv.x) + abs(dv.y));
        std::vector<std::pair<std::size_t, Box>> near;
        for (std::size_t i = 0; i < foreign_segs.size(); ++i) {
            const auto& [t, tb] = foreign_segs[i];
            if (!tb.intersects(bb)) continue;
            const Point& a = d.at(t.first);
            const Point& b = d.at(t.second);
            Rational ca = cross(dv, a - wp), cb = cross(dv, b - wp);
            Box part = tb;
            if (ca == cb) {
                if (abs(ca) > h) continue;
            } else {
                Rational lo = (-h - ca) / (cb - ca), hi = (h - ca) / (cb - ca);
                if (lo > hi) std::swap(lo, hi);
                if (lo < 0) lo = 0;
                if (hi > 1) hi = 1;
                if (lo > hi) continue;
                part = Box::of(lerp(a, b, lo), lerp(a, b, hi));
            }
            if (!part.intersects(bb)) continue;
            bool close = segments_intersect(wp, vp, a, b);
            if (!close) {
                Rational dist = std::min({squared_distance_to_segment(a, wp, vp), squared_distance_to_segment(b, wp, vp),
                                          squared_distance_to_segment(wp, a, b), squared_distance_to_segment(vp, a, b)});
                close = dist < r_up * r_up;
            }
            if (close) near.emplace_back(i, part);
        }
        for (std::size_t x = 0; x < near.size(); ++x)
            for (std::size_t y = x + 1; y < near.size(); ++y) {
                const auto& [s, sb] = foreign_segs[near[x].first];
                const auto& [t, tb] = foreign_segs[near[y].first];
                if (!detail::boxes_share_point(near[x].second, near[y].second, bb)) continue;
                if (s.contains(t.first) || s.contains(t.second)) continue;
                auto [it, fresh] = foreign_crossing.try_emplace({near[x].first, near[y].first});
                if (fresh) {
                    const Point& sa = d.at(s.first);
                    const Point& sz = d.at(s.second);
                    const Point& ta = d.at(t.first);
                    const Point& tz = d.at(t.second);
                    if (segments_intersect(sa, sz, ta, tz) &&
                        !(orientation(sa, sz, ta) == 0 && orientation(sa, sz, tz) == 0))
                        it->second = crossing_point(Segment{sa, sz}, Segment{ta, tz});
                }
                if (it->second && bb.contains(*it->second)) bound_beam(*it->second, v);
            }
    }

    // Pieces of a foreign segment between its crossings with two different
    // w-edges: keep one sample point of each piece outside the beam union.
    // Every such piece contains a piece between consecutive crossings, so
    // only those are sampled.
    auto on_w_edge = [&](const Point& x) {
        for (VertexId v : nbrs)
            if (orientation(wp, d.at(v), x) == 0 && on_collinear_segment(wp, d.at(v), x)) return true;
        return false;
    };
    for (std::size_t k = 0; k < on_w.size(); ++k) {
        auto& points = on_w[k];
        if (points.size() < 2) continue;
        const Point& a = d.at(foreign_segs[k].first.first);
        const Point dir = d.at(foreign_segs[k].first.second) - a;
        std::vector<std::pair<Rational, std::size_t>> order;
        for (std::size_t i = 0; i < points.size(); ++i) order.emplace_back(dot(points[i].first - a, dir), i);
        std::sort(order.begin(), order.end());
        for (std::size_t o = 0; o + 1 < order.size(); ++o) {
            std::size_t i = order[o].second, j = order[o + 1].second;
            if (points[i].second == points[j].second) continue;
            const Point& p = points[i].first;
            const Point& q = points[j].first;
            Point s = midpoint(p, q);
            if (on_w_edge(s)) s = lerp(p, q, make_rational(1, 3));
            if (on_w_edge(s)) s = lerp(p, q, make_rational(2, 3));
            if (on_w_edge(s)) continue;
            bound(squared_distance(s, wp));
            for (VertexId v : nbrs)
                if (beam_box[v].contains(s)) bound_beam(s, v);
        }
    }
    return {wp, largest_pow2_with_square_below(Rational(*best / 4))};
}

/// Independent audit of a disk against the replacement conditions. Returns
/// one message per violated condition.
inline std::vector<std::string> check_safe_disk(const Drawing& d, VertexId w, const Disk& disk)
{
    std::vector<std::string> out;
    const Point& wp = d.at(w);
    if (!(wp == disk.center)) out.push_back("disk not centred at the vertex");
    if (disk.radius <= 0) out.push_back("non-positive radius");
    const Rational r2 = disk.radius * disk.radius;

    // Membership in the beam hull(disk, v), parametrised as v + s (x - v), s >= 1.
    auto in_beam = [&](const Point& x, const Point& v) {
        if (squared_distance(x, wp) <= r2) return true;
        Point a = x - v;
        Point b = wp - v;
        Rational aa = dot(a, a);
        if (aa == 0) return false;
        Rational s = dot(a, b) / aa;
        if (s < 1) s = 1;
        Point q{Rational(v.x + s * a.x), Rational(v.y + s * a.y)};
        return squared_distance(q, wp) <= r2;
    };

    VertexSet nbrs = d.graph.has_vertex(w) ? d.graph.neighbours(w) : VertexSet{};
    for (const auto& [u, up] : d.position) {
        if (u == w) continue;
        if (disk.contains(up)) out.push_back("vertex " + to_string(u) + " inside the disk");
        for (VertexId v : nbrs)
            if (u != v && in_beam(up, d.at(v)))
                out.push_back("vertex " + to_string(u) + " inside the beam of " + to_string(v));
    }

    struct Cross {
        Point x;
        std::optional<VertexId> w_edge;
    };
    std::vector<Cross> cps;
    auto pairs = d.graph.multiplicities();
    std::vector<VertexPair> segs;
    for (const auto& [p, m] : pairs) segs.push_back(p);
    for (std::size_t i = 0; i < segs.size(); ++i)
        for (std::size_t j = i + 1; j < segs.size(); ++j) {
            Segment s{d.at(segs[i].first), d.at(segs[i].second)};
            Segment t{d.at(segs[j].first), d.at(segs[j].second)};
            if (!segments_cross(s, t)) continue;
            if (orientation(s.a, s.b, t.a) == 0 && orientation(s.a, s.b, t.b) == 0) continue;
            std::optional<VertexId> we;
            if (segs[i].contains(w)) we = segs[i].other(w);
            if (segs[j].contains(w)) we = segs[j].other(w);
            cps.push_back({crossing_point(s, t), we});
        }
    for (const Cross& c : cps)
        for (VertexId v : nbrs)
            if (c.w_edge != v && in_beam(c.x, d.at(v)))
                out.push_back("crossing point " + to_string(c.x) + " inside the beam of " + to_string(v));

    auto in_union = [&](const Point& x) {
        for (VertexId v : nbrs)
            if (in_beam(x, d.at(v))) return true;
        return false;
    };
    // Pieces between consecutive crossings along every edge not at w.
    for (std::size_t i = 0; i < segs.size(); ++i) {
        if (segs[i].contains(w)) continue;
        const Point& a = d.at(segs[i].first);
        const Point& b = d.at(segs[i].second);
        std::vector<std::pair<Rational, Point>> pts;
        for (std::size_t j = 0; j < segs.size(); ++j) {
            if (i == j) continue;
            Segment s{a, b};
            Segment t{d.at(segs[j].first), d.at(segs[j].second)};
            if (!segments_cross(s, t)) continue;
            if (orientation(s.a, s.b, t.a) == 0 && orientation(s.a, s.b, t.b) == 0) continue;
            Point x = crossing_point(s, t);
            pts.emplace_back(dot(x - a, b - a), x);
        }
        std::sort(pts.begin(), pts.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
            const Point& p = pts[k].second;
            const Point& q = pts[k + 1].second;
            if (p == q) continue;
            if (!in_union(p) || !in_union(q)) continue;
            bool witness = false;
            for (long t = 1; t < 8 && !witness; ++t)
                if (!in_union(lerp(p, q, make_rational(t, 8)))) witness = true;
            if (!witness)
                out.push_back("edge piece between crossings " + to_string(p) + " and " + to_string(q) +
                              " inside the beams");
        }
    }
    return out;
}

/// Replaces w by new points inside the disk. new_points gives the position of
/// each replacement vertex (w's own id may be reused); attach maps every edge
/// incident to w to the replacement vertex that takes over w's end.
inline Drawing replace_vertex_by_points(const Drawing& d, VertexId w, const Disk& disk,
                                        const std::map<VertexId, Point>& new_points,
                                        const std::map<EdgeId, VertexId>& attach)
{
    if (!d.graph.has_vertex(w)) throw GeometryError("replace_vertex_by_points: unknown vertex " + to_string(w));
    for (const auto& [v, p] : new_points) {
        if (!disk.contains(p)) throw GeometryError("replace_vertex_by_points: point " + to_string(p) + " outside disk");
        if (v != w && d.graph.has_vertex(v))
            throw GeometryError("replace_vertex_by_points: replacement id " + to_string(v) + " already used");
    }
    for (EdgeId e : d.graph.incident(w)) {
        auto it = attach.find(e);
        if (it == attach.end()) throw GeometryError("replace_vertex_by_points: edge " + to_string(e) + " unassigned");
        if (!new_points.contains(it->second))
            throw GeometryError("replace_vertex_by_points: edge " + to_string(e) + " assigned to unknown point");
    }
    if (attach.size() != d.graph.incident(w).size())
        throw GeometryError("replace_vertex_by_points: assignment names edges not incident to the vertex");

    Drawing out = d;
    std::vector<std::pair<EdgeId, VertexId>> ends;
    for (EdgeId e : d.graph.incident(w)) ends.emplace_back(e, d.graph.endpoints(e).other(w));
    out.graph.remove_vertex(w);
    out.position.erase(w);
    for (const auto& [v, p] : new_points) {
        out.graph.add_vertex(v);
        out.position[v] = p;
    }
    for (auto [e, v] : ends) out.graph.add_edge(e, attach.at(e), v);
    require_valid_drawing(out, "replace_vertex_by_points");
    VertexSet changed;
    for (const auto& [v, p] : new_points) changed.insert(v);
    auto gp = local_general_position_report(out, changed, 1);
    if (!gp.ok()) throw GeometryError("replace_vertex_by_points: " + gp.violations.front());
    return out;
}

/// p -> translate + scale * R (p - origin), R a rational rotation (cos, sin).
struct RigidMap {
    Point origin;
    Rational scale = 1;
    Rational cos = 1;
    Rational sin = 0;
    Point translate;

    Point operator()(const Point& p) const
    {
        Rational dx = p.x - origin.x;
        Rational dy = p.y - origin.y;
        Rational rx = cos * dx - sin * dy;
        Rational ry = sin * dx + cos * dy;
        return {Rational(translate.x + scale * rx), Rational(translate.y + scale * ry)};
    }
};

/// Rational rotations from primitive Pythagorean triples, identity first.
inline const std::vector<std::pair<Rational, Rational>>& rational_rotations()
{
    static const std::vector<std::pair<Rational, Rational>> rots = [] {
        std::vector<std::pair<Rational, Rational>> r{{Rational(1), Rational(0)}};
        const long triples[][3] = {{3, 4, 5},   {5, 12, 13},  {8, 15, 17},  {7, 24, 25},
                                   {20, 21, 29}, {12, 35, 37}, {9, 40, 41},  {28, 45, 53},
                                   {11, 60, 61}, {33, 56, 65}, {16, 63, 65}, {48, 55, 73}};
        for (const auto& t : triples) r.emplace_back(make_rational(t[0], t[2]), make_rational(t[1], t[2]));
        return r;
    }();
    return rots;
}

/// Box centre and a power-of-two scale that maps the drawing strictly inside
/// a disk of the given radius around the centre.
inline std::pair<Point, Rational> fit_scale(const Drawing& inner, const Rational& radius)
{
    if (inner.position.empty()) return {Point{}, Rational(1)};
    Box b{inner.position.begin()->second.x, inner.position.begin()->second.y, inner.position.begin()->second.x,
          inner.position.begin()->second.y};
    for (const auto& [v, p] : inner.position) b.expand(p);
    Point c{Rational((b.xmin + b.xmax) / 2), Rational((b.ymin + b.ymax) / 2)};
    Rational far = 0;
    for (const auto& [v, p] : inner.position) far = std::max(far, squared_distance(p, c));
    if (far == 0) return {c, Rational(1)};
    // scale^2 * far < radius^2 / 4
    Rational s2_bound = radius * radius / (4 * far);
    return {c, largest_pow2_with_square_below(s2_bound)};
}

/// Candidate rigid maps into the disk in the fixed trial order: every rotation
/// at the fitted scale, then again at half the scale, and so on.
inline RigidMap disk_candidate(const Drawing& inner, const Disk& disk, std::size_t attempt)
{
    auto [origin, scale] = fit_scale(inner, disk.radius);
    const auto& rots = rational_rotations();
    std::size_t halvings = attempt / rots.size();
    const auto& [c, s] = rots[attempt % rots.size()];
    return {origin, Rational(scale / pow2(static_cast<long>(halvings))), c, s, disk.center};
}

inline Drawing apply_map(const Drawing& d, const RigidMap& f)
{
    Drawing out = d;
    for (auto& [v, p] : out.position) p = f(p);
    return out;
}

/// Places inner strictly inside the disk by a rigid rational map such that its
/// union with the context drawing is in general position. Vertex and edge ids
/// of inner and context must be disjoint.
inline Drawing embed_in_disk(const Drawing& inner, const Disk& disk, const Drawing& context,
                             std::size_t max_attempts = 13 * 24)
{
    require_valid_drawing(inner, "embed_in_disk");
    for (VertexId v : inner.graph.vertices())
        if (context.graph.has_vertex(v)) throw GeometryError("embed_in_disk: shared vertex id " + to_string(v));
    for (const auto& [e, p] : inner.graph.edges())
        if (context.graph.has_edge(e)) throw GeometryError("embed_in_disk: shared edge id " + to_string(e));
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        Drawing placed = apply_map(inner, disk_candidate(inner, disk, attempt));
        Drawing both = context;
        for (const auto& [v, p] : placed.position) {
            both.graph.add_vertex(v);
            both.position[v] = p;
        }
        for (const auto& [e, p] : placed.graph.edges()) both.graph.add_edge(e, p.first, p.second);
        if (!drawing_violations(both).empty()) continue;
        if (is_general_position(both)) return placed;
    }
    throw GeometryError("embed_in_disk: no rigid placement reached general position");
}

/// Rounds every coordinate to the dyadic grid of spacing 2^-bits and keeps the
/// result only if the crossing pairs are unchanged and general position holds.
inline std::optional<Drawing> round_and_verify(const Drawing& d, long bits)
{
    Rational unit = pow2(-bits);
    Drawing out = d;
    for (auto& [v, p] : out.position) {
        for (Rational* c : {&p.x, &p.y}) {
            Rational q = *c / unit;
            Integer f;
            mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
            *c = Rational(f) * unit;
        }
    }
    if (!drawing_violations(out).empty()) return std::nullopt;
    if (count_crossings(out).pairs != count_crossings(d).pairs) return std::nullopt;
    if (!is_general_position(out)) return std::nullopt;
    return out;
}

} // namespace rcn
