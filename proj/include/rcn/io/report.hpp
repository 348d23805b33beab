#pragma once

#include <json.hpp>

#include "rcn/compose/compose.hpp"

namespace rcn {

inline nlohmann::ordered_json to_json(const ChargeSplit& c)
{
    return {{"inherited", c.inherited}, {"case1", c.case1},   {"case2a", c.case2a},
            {"case2b", c.case2b},       {"case3", c.case3},   {"case4", c.case4},
            {"unclassified", c.unclassified}, {"max_charge_2b", c.max_charge_2b},
            {"max_charge_34", c.max_charge_34}};
}

inline nlohmann::ordered_json to_json(const BoundReport& r)
{
    nlohmann::ordered_json pieces = nlohmann::ordered_json::array();
    for (const PieceBound& p : r.pieces)
        pieces.push_back({{"index", p.index + 1},
                          {"kind", p.kind},
                          {"method", p.method},
                          {"c", p.c},
                          {"delta", p.delta},
                          {"edges", p.edges},
                          {"crossings", p.crossings},
                          {"bound", p.bound}});
    nlohmann::ordered_json j = {{"formula", r.formula},
                                {"vertices", r.vertices},
                                {"edges", r.edges},
                                {"delta", r.delta},
                                {"k", r.k},
                                {"c", r.c}};
    j["t"] = r.t ? nlohmann::ordered_json(*r.t) : nlohmann::ordered_json(nullptr);
    j["bound"] = r.bound;
    j["observed"] = r.observed;
    j["max_per_edge"] = r.max_per_edge;
    j["initial_sum"] = r.initial_sum;
    j["initial_bound"] = r.initial_bound;
    j["ok"] = r.ok();
    j["pieces"] = pieces;
    j["charges"] = to_json(r.charges);
    j["violations"] = r.violations;
    j["notes"] = r.notes;
    return j;
}

inline std::string report_json(const BoundReport& r) { return to_json(r).dump(2) + "\n"; }

} // namespace rcn
