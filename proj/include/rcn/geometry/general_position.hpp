#pragma once

#include <array>
#include <random>
#include <tuple>

#include "rcn/geometry/crossings.hpp"

namespace rcn {

struct GeneralPositionReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

namespace detail {

/// Direction normalized to the upper half-plane so that parallel and
/// antiparallel vectors compare equal.
template <class T>
BasicPoint<T> half_plane_direction(BasicPoint<T> d)
{
    if (d.y < 0 || (d.y == 0 && d.x < 0)) return {T(-d.x), T(-d.y)};
    return d;
}

/// Strict weak order on upper-half-plane directions by angle.
template <class T>
bool direction_less(const BasicPoint<T>& a, const BasicPoint<T>& b)
{
    return cross(a, b) > 0;
}

/// Pairs (q, r) such that p, q, r are collinear; q < r.
template <class T>
std::vector<std::pair<VertexId, VertexId>> collinear_with(VertexId pv, const BasicPoint<T>& p,
                                                          const std::map<VertexId, BasicPoint<T>>& pts,
                                                          std::size_t limit)
{
    std::vector<std::pair<BasicPoint<T>, VertexId>> dirs;
    dirs.reserve(pts.size());
    for (const auto& [v, q] : pts)
        if (v != pv) dirs.emplace_back(half_plane_direction<T>(q - p), v);
    std::sort(dirs.begin(), dirs.end(), [](const auto& a, const auto& b) { return direction_less(a.first, b.first); });
    std::vector<std::pair<VertexId, VertexId>> out;
    for (std::size_t i = 0; i + 1 < dirs.size() && out.size() < limit; ++i)
        if (cross(dirs[i].first, dirs[i + 1].first) == 0)
            out.emplace_back(std::min(dirs[i].second, dirs[i + 1].second), std::max(dirs[i].second, dirs[i + 1].second));
    return out;
}

inline std::string triple_name(VertexId a, VertexId b, VertexId c)
{
    return to_string(a) + ", " + to_string(b) + ", " + to_string(c);
}

inline Point crossing_point_in_frame(const IntPoint& a, const IntPoint& b, const IntPoint& c, const IntPoint& d)
{
    HomogeneousPoint<Integer> h = line_intersection(a, b, c, d);
    Rational x(h.x, h.w), y(h.y, h.w);
    x.canonicalize();
    y.canonicalize();
    return {x, y};
}

inline void check_concurrency(const std::vector<SegmentGroup>& groups, const IntegerFrame& frame,
                              GeneralPositionReport& rep, std::size_t limit)
{
    std::vector<std::pair<Point, std::pair<std::size_t, std::size_t>>> pts;
    for (auto [i, j] : crossing_segment_pairs(groups, frame)) {
        const IntPoint& a = frame.position.at(groups[i].ends.first);
        const IntPoint& b = frame.position.at(groups[i].ends.second);
        const IntPoint& c = frame.position.at(groups[j].ends.first);
        const IntPoint& d = frame.position.at(groups[j].ends.second);
        if (cross(b - a, d - c) == 0) {
            rep.violations.push_back("overlapping segments " + to_string(groups[i].ends.first) + "-" +
                                     to_string(groups[i].ends.second) + " and " + to_string(groups[j].ends.first) +
                                     "-" + to_string(groups[j].ends.second));
            continue;
        }
        pts.emplace_back(crossing_point_in_frame(a, b, c, d), std::pair{i, j});
    }
    std::sort(pts.begin(), pts.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    for (std::size_t i = 0; i + 1 < pts.size() && rep.violations.size() < limit; ++i)
        if (pts[i].first == pts[i + 1].first) {
            auto seg = [&](std::size_t k) {
                return to_string(groups[k].ends.first) + "-" + to_string(groups[k].ends.second);
            };
            auto [a, b] = pts[i].second;
            auto [c, d] = pts[i + 1].second;
            rep.violations.push_back("concurrent crossings at a common point: " + seg(a) + " x " + seg(b) + " and " +
                                     seg(c) + " x " + seg(d));
        }
}

} // namespace detail

/// General-position audit: (a) no three vertices collinear, (b) distinct
/// crossing points, (c) no vertex interior to a non-incident edge. In strict
/// mode (b) is run on the segments between all vertex pairs, which is quartic.
inline GeneralPositionReport general_position_report(const Drawing& d, bool strict = false, std::size_t limit = 32)
{
    GeneralPositionReport rep;
    for (const std::string& s : drawing_violations(d)) rep.violations.push_back(s);
    if (!rep.ok()) return rep;
    IntegerFrame frame = integer_frame(d.position);

    std::set<std::tuple<VertexId, VertexId, VertexId>> triples;
    for (const auto& [v, p] : frame.position) {
        for (auto [q, r] : detail::collinear_with(v, p, frame.position, limit)) {
            std::array<VertexId, 3> t{v, q, r};
            std::sort(t.begin(), t.end());
            if (triples.emplace(t[0], t[1], t[2]).second)
                rep.violations.push_back("collinear vertices " + detail::triple_name(t[0], t[1], t[2]));
        }
        if (rep.violations.size() >= limit) return rep;
    }

    auto groups = segment_groups(d.graph);
    for (const SegmentGroup& g : groups) {
        const IntPoint& a = frame.position.at(g.ends.first);
        const IntPoint& b = frame.position.at(g.ends.second);
        for (const auto& [v, p] : frame.position) {
            if (g.ends.contains(v)) continue;
            if (orientation(a, b, p) == 0 && on_collinear_segment(a, b, p))
                rep.violations.push_back("vertex " + to_string(v) + " on edge " + to_string(g.ends.first) + "-" +
                                         to_string(g.ends.second));
        }
        if (rep.violations.size() >= limit) return rep;
    }

    if (strict) {
        Multigraph all;
        for (VertexId v : d.graph.vertices()) all.add_vertex(v);
        auto vs = d.graph.vertices();
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j) all.add_edge(vs[i], vs[j]);
        detail::check_concurrency(segment_groups(all), frame, rep, limit);
    } else {
        detail::check_concurrency(groups, frame, rep, limit);
    }
    return rep;
}

inline bool is_general_position(const Drawing& d, bool strict = false)
{
    return general_position_report(d, strict, 1).ok();
}

/// General-position audit restricted to what can involve the given vertices:
/// collinear triples through them, vertices on their incident edges, and
/// crossings of their incident edges that are concurrent with any segment.
/// Segments are only compared when their boxes meet.
inline GeneralPositionReport local_general_position_report(const Drawing& d, const VertexSet& changed,
                                                           std::size_t limit = 8)
{
    GeneralPositionReport rep;
    for (VertexId v : changed) {
        for (auto [q, r] : detail::collinear_with(v, d.at(v), d.position, 1)) {
            rep.violations.push_back("collinear vertices " + detail::triple_name(v, q, r));
            return rep;
        }
    }

    struct Seg {
        VertexPair ends;
        Box box;
    };
    std::vector<Seg> all;
    std::vector<std::size_t> touched;
    for (const auto& [p, mult] : d.graph.multiplicities()) {
        const Point& a = d.at(p.first);
        const Point& b = d.at(p.second);
        if (changed.contains(p.first) || changed.contains(p.second)) touched.push_back(all.size());
        all.push_back({p, Box::of(a, b)});
    }
    std::set<std::size_t> touched_set(touched.begin(), touched.end());
    for (std::size_t i : touched) {
        const Seg& s = all[i];
        const Point& a = d.at(s.ends.first);
        const Point& b = d.at(s.ends.second);
        for (std::size_t j = 0; j < all.size(); ++j) {
            if (j == i || (touched_set.contains(j) && j < i)) continue;
            const Seg& t = all[j];
            if (!s.box.intersects(t.box)) continue;
            if (s.ends.contains(t.ends.first) || s.ends.contains(t.ends.second)) continue;
            const Point& c = d.at(t.ends.first);
            const Point& e = d.at(t.ends.second);
            if (!segments_intersect(a, b, c, e)) continue;
            if (orientation(a, b, c) == 0 && orientation(a, b, e) == 0) {
                rep.violations.push_back("overlapping segments");
                return rep;
            }
            Point x = crossing_point({a, b}, {c, e});
            for (std::size_t k = 0; k < all.size(); ++k) {
                if (k == i || k == j || !all[k].box.contains(x)) continue;
                const Point& f = d.at(all[k].ends.first);
                const Point& g = d.at(all[k].ends.second);
                if (orientation(f, g, x) == 0) {
                    rep.violations.push_back("concurrent crossings at " + to_string(x));
                    if (rep.violations.size() >= limit) return rep;
                }
            }
        }
    }
    return rep;
}

/// Randomly perturbs vertices by dyadic offsets until the drawing is in
/// general position and has at most crossing_budget crossings. Magnitudes
/// start below a quarter of the minimum vertex distance and halve on failure.
inline Drawing perturb_general_position(const Drawing& d, std::uint64_t crossing_budget, std::uint64_t seed = 1,
                                        int max_rounds = 64)
{
    require_valid_drawing(d, "perturb_general_position");
    if (is_general_position(d) && crossing_total(d) <= crossing_budget) return d;
    if (d.position.size() < 2) return d;

    Rational min_sq = -1;
    {
        std::vector<Point> pts;
        for (const auto& [v, p] : d.position) pts.push_back(p);
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                Rational s = squared_distance(pts[i], pts[j]);
                if (min_sq < 0 || s < min_sq) min_sq = s;
            }
    }
    Rational mag = largest_pow2_with_square_below(Rational(min_sq / 16));
    std::mt19937_64 rng(seed);
    constexpr long grain = 1 << 12;
    std::uniform_int_distribution<long> pick(-grain, grain);
    for (int round = 0; round < max_rounds; ++round) {
        for (int attempt = 0; attempt < 4; ++attempt) {
            Drawing out = d;
            Rational unit = mag / grain;
            for (auto& [v, p] : out.position) {
                p.x += unit * pick(rng);
                p.y += unit * pick(rng);
            }
            if (drawing_violations(out).empty() && crossing_total(out) <= crossing_budget && is_general_position(out))
                return out;
        }
        mag /= 2;
    }
    throw GeometryError("perturb_general_position: no valid perturbation found");
}

} // namespace rcn
