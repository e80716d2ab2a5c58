#pragma once

#include <json.hpp>

#include "phase_sentinel/atlas/portrait.hpp"
#include "phase_sentinel/compactify/infinity.hpp"
#include "phase_sentinel/criteria/report.hpp"
#include "phase_sentinel/equilibrium/local.hpp"
#include "phase_sentinel/flow/sectors.hpp"

namespace phase_sentinel {

/// Stable-field-name serialization of the report types, for CI diffing.
inline nlohmann::ordered_json to_json(const ConditionRecord& c) {
    nlohmann::ordered_json j;
    j["id"] = c.id;
    j["status"] = condition_status_name(c.status);
    if (c.sign != 0) j["sign"] = c.sign;
    j["sampled"] = c.sampled;
    if (!c.witnesses.empty()) {
        nlohmann::ordered_json w = nlohmann::ordered_json::array();
        for (const auto& p : c.witnesses) w.push_back({p.x, p.y});
        j["witnesses"] = w;
    }
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

inline nlohmann::ordered_json to_json(const CriterionReport& r) {
    nlohmann::ordered_json j;
    j["theorem"] = theorem_tag_name(r.theorem);
    j["verdict"] = verdict_name(r.verdict);
    j["scope"] = r.scope;
    nlohmann::ordered_json conds = nlohmann::ordered_json::array();
    for (const auto& c : r.conditions) conds.push_back(to_json(c));
    j["conditions"] = conds;
    j["grid"] = {{"nx", r.grid.nx}, {"ny", r.grid.ny}, {"x_cap", r.grid.x_cap}, {"y_cap", r.grid.y_cap}};
    if (!r.flags.empty()) j["flags"] = r.flags;
    return j;
}

inline nlohmann::ordered_json to_json(const EquilibriumClass& c) {
    nlohmann::ordered_json j;
    j["kind"] = kind_name(c.kind);
    if (c.sectors) j["sectors"] = {{"elliptic", c.sectors->elliptic}, {"hyperbolic", c.sectors->hyperbolic}};
    if (!c.directions.empty()) j["directions"] = c.directions;
    if (!c.parabolic_candidates.empty()) j["parabolic_candidates"] = c.parabolic_candidates;
    if (c.reflected) j["reflected"] = true;
    return j;
}

inline nlohmann::ordered_json to_json(const SectorSummary& s) {
    nlohmann::ordered_json j;
    j["elliptic"] = s.elliptic;
    j["hyperbolic"] = s.hyperbolic;
    j["parabolic"] = s.parabolic;
    j["probe_radius"] = s.probe_radius;
    j["confidence"] = s.confidence == SectorConfidence::ExactBySymmetry ? "exact-by-symmetry" : "empirical";
    return j;
}

inline nlohmann::ordered_json to_json(const InfinityEquilibrium& e, const InfinityClass& c) {
    nlohmann::ordered_json j;
    j["label"] = e.label;
    j["chart"] = e.chart == Chart::U ? "U" : "V";
    j["position"] = e.position;
    if (c.degenerate) {
        j["classification"] = "direction-table";
        j["table"] = c.table;
        nlohmann::ordered_json dirs = nlohmann::ordered_json::array();
        for (const auto& d : c.directions) {
            nlohmann::ordered_json dj;
            dj["angle"] = d.angle;
            dj["orbits"] = d.infinitely_many ? "infinitely-many" : "one";
            dj["time_sense"] = d.time_sense > 0 ? "+" : "-";
            dirs.push_back(dj);
        }
        j["directions"] = dirs;
    } else {
        j["classification"] = kind_name(c.kind);
        if (c.star) j["star"] = true;
    }
    return j;
}

inline nlohmann::ordered_json to_json(const RegionLabel& r) {
    nlohmann::ordered_json j;
    j["family"] = family_name(r.family);
    j["label"] = r.label;
    nlohmann::ordered_json d = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.discriminants) d[k] = v;
    j["discriminants"] = d;
    return j;
}

inline nlohmann::ordered_json to_json(const PortraitDescriptor& p) {
    nlohmann::ordered_json j;
    j["region"] = to_json(p.region);
    j["figure"] = p.figure_tag;
    j["origin"] = kind_name(p.origin_kind);
    nlohmann::ordered_json inv = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < p.infinity.size(); ++i)
        inv.push_back(to_json(p.infinity[i], p.infinity_classes[i]));
    j["infinity"] = inv;
    j["expected_inventory"] = p.expected_inventory;
    j["nonexistence"] = verdict_name(p.nonexistence);
    return j;
}

}  // namespace phase_sentinel
