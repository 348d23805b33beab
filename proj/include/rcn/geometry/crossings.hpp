#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "rcn/geometry/drawing.hpp"

namespace rcn {

using EdgePair = std::pair<EdgeId, EdgeId>; ///< first < second

inline EdgePair make_edge_pair(EdgeId a, EdgeId b) { return a < b ? EdgePair{a, b} : EdgePair{b, a}; }

struct CrossingReport {
    std::uint64_t total = 0;
    std::map<EdgeId, std::uint64_t> per_edge; ///< every edge present, zero if uncrossed
    std::set<EdgePair> pairs;

    std::uint64_t max_per_edge() const
    {
        std::uint64_t best = 0;
        for (const auto& [e, c] : per_edge) best = std::max(best, c);
        return best;
    }

    friend bool operator==(const CrossingReport&, const CrossingReport&) = default;
};

/// Pairs of distinct segments (indices into groups) that cross properly:
/// no shared endpoint and a common point. Integer-frame sweep over x.
inline std::vector<std::pair<std::size_t, std::size_t>> crossing_segment_pairs(const std::vector<SegmentGroup>& groups,
                                                                               const IntegerFrame& frame)
{
    struct Item {
        const IntPoint* a;
        const IntPoint* b;
        Integer xmin, xmax, ymin, ymax;
        std::size_t index;
    };
    std::vector<Item> items;
    items.reserve(groups.size());
    for (std::size_t i = 0; i < groups.size(); ++i) {
        const IntPoint& a = frame.position.at(groups[i].ends.first);
        const IntPoint& b = frame.position.at(groups[i].ends.second);
        items.push_back({&a, &b, std::min(a.x, b.x), std::max(a.x, b.x), std::min(a.y, b.y), std::max(a.y, b.y), i});
    }
    std::sort(items.begin(), items.end(), [](const Item& l, const Item& r) { return l.xmin < r.xmin; });
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const Item& s = items[i];
        const VertexPair& se = groups[s.index].ends;
        for (std::size_t j = i + 1; j < items.size() && items[j].xmin <= s.xmax; ++j) {
            const Item& t = items[j];
            if (t.ymin > s.ymax || t.ymax < s.ymin) continue;
            const VertexPair& te = groups[t.index].ends;
            if (se.contains(te.first) || se.contains(te.second)) continue;
            if (segments_intersect(*s.a, *s.b, *t.a, *t.b))
                out.emplace_back(std::min(s.index, t.index), std::max(s.index, t.index));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Exact crossing pairs of a drawing. Parallel copies share one segment and
/// never cross each other; a segment crossed by a group of p copies yields p pairs.
inline CrossingReport count_crossings(const Drawing& d)
{
    CrossingReport r;
    for (const auto& [id, p] : d.graph.edges()) r.per_edge[id] = 0;
    auto groups = segment_groups(d.graph);
    IntegerFrame frame = integer_frame(d.position);
    for (auto [i, j] : crossing_segment_pairs(groups, frame)) {
        for (EdgeId a : groups[i].copies)
            for (EdgeId b : groups[j].copies) {
                r.pairs.insert(make_edge_pair(a, b));
                ++r.per_edge[a];
                ++r.per_edge[b];
            }
        r.total += groups[i].copies.size() * groups[j].copies.size();
    }
    return r;
}

/// Crossing total only, without materializing the pair set.
inline std::uint64_t crossing_total(const Drawing& d)
{
    auto groups = segment_groups(d.graph);
    IntegerFrame frame = integer_frame(d.position);
    std::uint64_t total = 0;
    for (auto [i, j] : crossing_segment_pairs(groups, frame)) total += groups[i].copies.size() * groups[j].copies.size();
    return total;
}

} // namespace rcn
