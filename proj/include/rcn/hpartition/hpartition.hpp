#pragma once

#include <random>

#include "rcn/blowup.hpp"
#include "rcn/geometry/disk.hpp"
#include "rcn/planar/fary.hpp"
#include "rcn/planar/separating.hpp"

namespace rcn {

class PartitionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Partition of a multigraph's vertices into bags indexed by the vertices of
/// a simple quotient graph H.
struct HPartition {
    Graph quotient;
    std::map<VertexId, VertexSet> bags; ///< H-vertex -> K-vertices

    std::map<VertexId, VertexId> bag_of() const
    {
        std::map<VertexId, VertexId> out;
        for (const auto& [h, bag] : bags)
            for (VertexId v : bag) out[v] = h;
        return out;
    }

    bool solitary(VertexId h) const { return bags.at(h).size() == 1; }
};

struct PartitionStats {
    std::size_t width = 0;
    std::size_t density = 0;
    bool non_solitary_independent = true;
};

inline std::vector<std::string> partition_violations(const HPartition& p, const Multigraph& k)
{
    std::vector<std::string> out;
    std::map<VertexId, std::size_t> seen;
    for (VertexId h : p.quotient.vertices())
        if (!p.bags.contains(h)) out.push_back("quotient vertex " + to_string(h) + " has no bag");
    for (const auto& [h, bag] : p.bags) {
        if (!p.quotient.has_vertex(h)) out.push_back("bag " + to_string(h) + " is not a quotient vertex");
        if (bag.empty()) out.push_back("bag " + to_string(h) + " is empty");
        for (VertexId v : bag) {
            if (!k.has_vertex(v)) out.push_back("bag " + to_string(h) + " holds unknown vertex " + to_string(v));
            ++seen[v];
        }
    }
    for (VertexId v : k.vertices()) {
        auto it = seen.find(v);
        if (it == seen.end()) out.push_back("vertex " + to_string(v) + " is in no bag");
        else if (it->second > 1) out.push_back("vertex " + to_string(v) + " is in several bags");
    }
    if (!out.empty()) return out;
    auto of = p.bag_of();
    for (const auto& [id, e] : k.edges()) {
        VertexId a = of.at(e.first), b = of.at(e.second);
        if (a != b && !p.quotient.has_edge(a, b))
            out.push_back("edge " + to_string(id) + " joins bags " + to_string(a) + " and " + to_string(b) +
                          " that are not adjacent in H");
    }
    return out;
}

/// Width, density (edges with an endpoint in the bag, parallel edges counted
/// with multiplicity) and whether the non-solitary bags are independent in H.
inline PartitionStats partition_stats(const HPartition& p, const Multigraph& k)
{
    auto problems = partition_violations(p, k);
    if (!problems.empty()) throw PartitionError("partition_stats: " + problems.front());
    PartitionStats s;
    auto of = p.bag_of();
    std::map<VertexId, std::size_t> touching;
    for (const auto& [id, e] : k.edges()) {
        VertexId a = of.at(e.first), b = of.at(e.second);
        ++touching[a];
        if (b != a) ++touching[b];
    }
    for (const auto& [h, bag] : p.bags) {
        s.width = std::max(s.width, bag.size());
        s.density = std::max(s.density, touching[h]);
    }
    for (const VertexPair& e : p.quotient.edges())
        if (!p.solitary(e.first) && !p.solitary(e.second)) s.non_solitary_independent = false;
    return s;
}

namespace detail {

/// Squared radius bound factor of a busy region: the intersection of two
/// strips of half-width eps around crossing lines with directions d1, d2 lies
/// in a disk of squared radius 4 eps^2 |d1|^2 |d2|^2 / (d1 x d2)^2.
inline Rational busy_factor(const Point& d1, const Point& d2)
{
    Rational c = cross(d1, d2);
    return Rational(dot(d1, d1) * dot(d2, d2) / (c * c));
}

struct BusyRegion {
    VertexPair e;
    VertexPair f;
    Point x;
    Rational factor; ///< rho^2 = 4 eps^2 factor
};

inline std::vector<BusyRegion> busy_regions(const Drawing& dh)
{
    std::vector<BusyRegion> out;
    auto groups = segment_groups(dh.graph);
    IntegerFrame frame = integer_frame(dh.position);
    for (auto [i, j] : crossing_segment_pairs(groups, frame)) {
        const VertexPair& e = groups[i].ends;
        const VertexPair& f = groups[j].ends;
        Segment s = {dh.at(e.first), dh.at(e.second)};
        Segment t = {dh.at(f.first), dh.at(f.second)};
        out.push_back({e, f, crossing_point(s, t), busy_factor(s.b - s.a, t.b - t.a)});
    }
    return out;
}

} // namespace detail

/// A power of two eps <= 1 meeting the four disk/corridor conditions, each
/// enforced through a sufficient distance inequality: disks 2 eps apart,
/// corridors of disjoint non-crossing edges 2 eps apart, corridors 2 eps away
/// from third-party disks, and busy regions (bounded by disks around the
/// crossing points) pairwise disjoint and away from all vertex disks.
inline Rational safe_epsilon(const Drawing& dh)
{
    std::optional<Rational> best; // bound on eps^2
    auto bound = [&](const Rational& t) {
        if (!best || t < *best) best = t;
    };
    std::vector<std::pair<VertexId, Point>> pts(dh.position.begin(), dh.position.end());
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) bound(Rational(squared_distance(pts[i].second, pts[j].second) / 4));

    auto segs = segment_groups(dh.graph);
    std::set<std::pair<VertexPair, VertexPair>> crossing;
    auto busy = detail::busy_regions(dh);
    for (const auto& b : busy) crossing.insert({b.e, b.f});
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const VertexPair& e = segs[i].ends;
        const Point& a = dh.at(e.first);
        const Point& b = dh.at(e.second);
        for (const auto& [v, p] : pts)
            if (!e.contains(v)) bound(Rational(squared_distance_to_segment(p, a, b) / 4));
        for (std::size_t j = i + 1; j < segs.size(); ++j) {
            const VertexPair& f = segs[j].ends;
            if (e.contains(f.first) || e.contains(f.second)) continue;
            if (crossing.contains({e, f}) || crossing.contains({f, e})) continue;
            bound(Rational(squared_distance_between_disjoint_segments(a, b, dh.at(f.first), dh.at(f.second)) / 4));
        }
    }
    for (std::size_t i = 0; i < busy.size(); ++i) {
        for (std::size_t j = i + 1; j < busy.size(); ++j)
            bound(Rational(squared_distance(busy[i].x, busy[j].x) / (8 * (busy[i].factor + busy[j].factor))));
        for (const auto& [v, p] : pts) bound(Rational(squared_distance(busy[i].x, p) / (2 * (4 * busy[i].factor + 1))));
    }
    if (!best || *best > 1) return Rational(1);
    return largest_pow2_with_square_below(*best);
}

/// Independent audit of eps: checks the four conditions with exact distance
/// computations between the actual disks and corridor boundaries.
inline std::vector<std::string> check_safe_epsilon(const Drawing& dh, const Rational& eps)
{
    std::vector<std::string> out;
    const Rational e2 = eps * eps;
    auto vs = dh.graph.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (squared_distance(dh.at(vs[i]), dh.at(vs[j])) <= 4 * e2)
                out.push_back("disks of " + to_string(vs[i]) + " and " + to_string(vs[j]) + " meet");
    auto pairs = dh.graph.multiplicities();
    std::vector<VertexPair> es;
    for (const auto& [p, m] : pairs) es.push_back(p);
    // Corridor of AB = points within eps of segment AB (hull of the two disks).
    for (const VertexPair& e : es)
        for (VertexId q : vs) {
            if (e.contains(q)) continue;
            if (squared_distance_to_segment(dh.at(q), dh.at(e.first), dh.at(e.second)) <= 4 * e2)
                out.push_back("corridor " + to_string(e.first) + "-" + to_string(e.second) + " meets disk of " + to_string(q));
        }
    struct Busy {
        Point x;
        Rational rho2;
    };
    std::vector<Busy> busy;
    for (std::size_t i = 0; i < es.size(); ++i)
        for (std::size_t j = i + 1; j < es.size(); ++j) {
            const VertexPair& e = es[i];
            const VertexPair& f = es[j];
            if (e.contains(f.first) || e.contains(f.second)) continue;
            Segment s{dh.at(e.first), dh.at(e.second)};
            Segment t{dh.at(f.first), dh.at(f.second)};
            if (segments_cross(s, t)) {
                // The two strips meet in a parallelogram around the crossing
                // whose corners are eps (+-|d1| d2 +- |d2| d1) / (d1 x d2) away.
                Point d1 = s.b - s.a, d2 = t.b - t.a;
                Rational c = cross(d1, d2);
                Rational corner = 4 * e2 * dot(d1, d1) * dot(d2, d2) / (c * c);
                busy.push_back({crossing_point(s, t), corner});
            } else if (squared_distance_between_disjoint_segments(s.a, s.b, t.a, t.b) <= 4 * e2) {
                out.push_back("corridors " + to_string(e.first) + "-" + to_string(e.second) + " and " +
                              to_string(f.first) + "-" + to_string(f.second) + " meet");
            }
        }
    for (std::size_t i = 0; i < busy.size(); ++i) {
        for (std::size_t j = i + 1; j < busy.size(); ++j) {
            Rational d2 = squared_distance(busy[i].x, busy[j].x);
            // disjoint if d > r1 + r2, i.e. d^2 > (r1 + r2)^2; test via d^2 > 2(r1^2 + r2^2)
            if (d2 <= 2 * (busy[i].rho2 + busy[j].rho2)) out.push_back("busy regions at " + to_string(busy[i].x) + " and " + to_string(busy[j].x) + " may meet");
        }
        for (VertexId q : vs)
            if (squared_distance(busy[i].x, dh.at(q)) <= 2 * (busy[i].rho2 + e2))
                out.push_back("busy region at " + to_string(busy[i].x) + " may meet disk of " + to_string(q));
    }
    return out;
}

/// Draws K by placing each bag's vertices inside the eps-disk of its H-vertex:
/// a solitary vertex at the point itself, larger bags on a small rational
/// parabola arc; orientations and jitter vary until general position holds.
inline Drawing draw_via_hpartition(const Multigraph& k, const HPartition& p, const Drawing& dh, std::uint64_t seed = 1)
{
    auto problems = partition_violations(p, k);
    if (!problems.empty()) throw PartitionError("draw_via_hpartition: " + problems.front());
    for (VertexId h : p.quotient.vertices())
        if (!dh.position.contains(h)) throw PartitionError("draw_via_hpartition: H-vertex " + to_string(h) + " not drawn");
    for (const VertexPair& e : p.quotient.edges()) {
        bool drawn = false;
        for (EdgeId id : dh.graph.incident(e.first))
            if (dh.graph.endpoints(id) == e) drawn = true;
        if (!drawn) throw PartitionError("draw_via_hpartition: H-edge missing from its drawing");
    }
    Rational eps = safe_epsilon(dh);
    const auto& rots = rational_rotations();
    std::mt19937_64 rng(seed);
    for (std::size_t attempt = 0; attempt < 64; ++attempt) {
        Drawing out;
        out.graph = k;
        for (const auto& [h, bag] : p.bags) {
            const Point& c = dh.at(h);
            if (bag.size() == 1) {
                out.position[*bag.begin()] = c;
                continue;
            }
            const auto& [cs, sn] = rots[(attempt + h.value) % rots.size()];
            Point u{cs, sn}, n{Rational(-sn), cs};
            long m = static_cast<long>(bag.size());
            Rational delta = eps / (2 * m);
            Rational jitter = attempt == 0 ? Rational(0) : Rational(delta * delta / 64);
            std::uniform_int_distribution<long> pick(-64, 64);
            long i = 0;
            for (VertexId v : bag) {
                Rational s = delta * Rational(2 * i - (m - 1), 2);
                Rational along = s + jitter * pick(rng) / 64;
                Rational across = s * s + jitter * pick(rng) / 64;
                out.position[v] = {Rational(c.x + along * u.x + across * n.x), Rational(c.y + along * u.y + across * n.y)};
                ++i;
            }
        }
        if (drawing_violations(out).empty() && is_general_position(out)) return out;
    }
    throw PartitionError("draw_via_hpartition: could not reach general position");
}

/// Guarantees for a drawing produced by draw_via_hpartition.
struct HPartitionGuarantee {
    std::uint64_t total = 0;                  ///< part 1 bound
    std::optional<std::uint64_t> per_edge;    ///< part 2 bound if H is drawn crossing-free
    std::string per_edge_rule;                ///< "2d" or "d"
};

inline HPartitionGuarantee hpartition_guarantee(const Multigraph& k, const HPartition& p, const Drawing& dh)
{
    PartitionStats s = partition_stats(p, k);
    std::uint64_t cr = crossing_total(dh);
    std::uint64_t delta = k.max_degree();
    std::uint64_t w = s.width;
    std::uint64_t sum_sq = 0;
    for (const auto& [h, bag] : p.bags)
        if (bag.size() > 1)
            for (VertexId v : bag) sum_sq += static_cast<std::uint64_t>(k.degree(v)) * k.degree(v);
    HPartitionGuarantee g;
    g.total = cr * w * w * delta * delta + (w - 1) * sum_sq;
    if (cr == 0) {
        if (s.non_solitary_independent) {
            g.per_edge = s.density;
            g.per_edge_rule = "d";
        } else {
            g.per_edge = 2 * s.density;
            g.per_edge_rule = "2d";
        }
    }
    return g;
}

/// Classification of a crossing pair of a drawing made from an H-partition:
/// 1 if some bag holds an endpoint of both edges, 2 if the four endpoints lie
/// in four bags whose H-edges cross and the crossing lies in their busy-region
/// disk, 0 if neither (which the construction rules out).
inline int classify_hpartition_crossing(const Drawing& dk, const HPartition& p, const Drawing& dh, const Rational& eps,
                                        EdgeId e, EdgeId f)
{
    auto of = p.bag_of();
    const VertexPair& a = dk.graph.endpoints(e);
    const VertexPair& b = dk.graph.endpoints(f);
    VertexSet be{of.at(a.first), of.at(a.second)};
    VertexSet bf{of.at(b.first), of.at(b.second)};
    for (VertexId x : be)
        if (bf.contains(x)) return 1;
    if (be.size() != 2 || bf.size() != 2) return 0;
    Segment s{dh.at(*be.begin()), dh.at(*be.rbegin())};
    Segment t{dh.at(*bf.begin()), dh.at(*bf.rbegin())};
    if (!segments_cross(s, t)) return 0;
    Point x = crossing_point(s, t);
    Point y = crossing_point(dk.segment(e), dk.segment(f));
    Rational rho2 = 4 * eps * eps * detail::busy_factor(s.b - s.a, t.b - t.a);
    return squared_distance(x, y) <= rho2 ? 2 : 0;
}

} // namespace rcn
