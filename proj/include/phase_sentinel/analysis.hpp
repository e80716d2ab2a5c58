#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phase_sentinel/atlas/portrait.hpp"
#include "phase_sentinel/atlas/regions.hpp"
#include "phase_sentinel/core/parse.hpp"
#include "phase_sentinel/core/series.hpp"
#include "phase_sentinel/core/symmetry.hpp"
#include "phase_sentinel/criteria/baselines.hpp"
#include "phase_sentinel/criteria/theorems.hpp"
#include "phase_sentinel/equilibrium/local.hpp"
#include "phase_sentinel/flow/sectors.hpp"
#include "phase_sentinel/report/json.hpp"

namespace phase_sentinel {

struct AnalysisOptions {
    double tol = 1e-9;
    double zeta = 0.0;  // 0: criteria default
    SamplingGrid grid;
};

/// Composite analysis of one system: local series, origin classification,
/// every applicable nonexistence criterion, and for the cubic family the
/// region label and boundary inventory.
struct Analysis {
    std::optional<SeriesData> series;
    std::string series_note;
    std::optional<GRegion> region;
    std::optional<EquilibriumClass> origin;
    Symmetry symmetry = Symmetry::Asymmetric;
    EllipticBound bounded = EllipticBound::Unknown;
    std::vector<CriterionReport> criteria;
    std::vector<std::string> skipped;  // criteria that did not apply
    std::optional<RegionLabel> atlas_label;
    std::optional<PortraitDescriptor> portrait;
    bool origin_classified = false;
};

inline Analysis analyze_system(const ParsedSystem& ps, const AnalysisOptions& opts = {}) {
    Analysis out;
    const PlanarSystem& sys = ps.system;

    out.symmetry = is_symmetric(sys) ? Symmetry::Symmetric : Symmetry::Asymmetric;

    try {
        out.series = series_at_origin(sys);
    } catch (const Error& e) {
        out.series_note = e.what();
    }

    if (out.series) {
        try {
            GRegion region = region_of(*out.series);
            out.region = region;
            if (region.label == GRegionLabel::G63) {
                try {
                    LienardForm lf = to_lienard(sys);
                    BoundedEllipticResult ber = bounded_elliptic_test(lf, 50.0);
                    if (ber.kind == BoundedEllipticKind::Bounded) out.bounded = EllipticBound::Bounded;
                } catch (const NotXOnly&) {
                    // stays unknown; the candidate set widens accordingly
                }
            }
            out.origin = classify_origin(*out.series, out.symmetry, out.bounded);
            out.origin_classified = true;
        } catch (const Error& e) {
            out.series_note = e.what();
        }
    }

    auto run = [&](const char* name, auto&& fn) {
        try {
            out.criteria.push_back(fn());
        } catch (const Error& e) {
            out.skipped.push_back(std::string(name) + ": " + e.what());
        }
    };
    run("T1", [&] { return check_thm1(sys, opts.zeta, opts.grid); });
    run("T1b", [&] { return check_thm1b(sys, opts.zeta, opts.grid); });
    run("T3", [&] { return check_thm3(sys, opts.zeta, opts.grid); });
    if (const Poly1* gp = sys.g.poly()) {
        auto [lead, deg] = gp->leading_from(0);
        if (deg >= 1 && deg % 2 == 1 && lead > 0.0)
            run("T2", [&] { return check_thm2(sys, deg, 1, opts.zeta, opts.grid); });
        else
            out.skipped.push_back("T2: leading degree of g is not an odd power with positive coefficient");
    }
    if (ps.cubic && ps.cubic->family != Family::general) {
        run("DulacB1", [&] { return dulac_baseline(*ps.cubic); });
        try {
            out.atlas_label = classify_region(*ps.cubic);
            out.portrait = portrait_descriptor(*out.atlas_label, *ps.cubic);
        } catch (const Error&) {
            // outside the admissible parameter set; label omitted
        }
    }
    return out;
}

inline nlohmann::ordered_json to_json(const Analysis& a, const ParsedSystem& ps) {
    nlohmann::ordered_json j;
    j["input"] = serialize_system(ps);
    if (a.series) {
        nlohmann::ordered_json s;
        s["a"] = a.series->a;
        s["b"] = a.series->b;
        s["a_k"] = a.series->a_k;
        s["k"] = a.series->k;
        if (a.series->b_n) s["b_n"] = *a.series->b_n;
        if (a.series->n) s["n"] = *a.series->n;
        s["y_remainder_present"] = a.series->y_remainder_present;
        j["series"] = s;
    }
    if (!a.series_note.empty()) j["series_note"] = a.series_note;
    j["symmetry"] = a.symmetry == Symmetry::Symmetric ? "symmetric" : "asymmetric";
    if (a.region) j["region"] = region_name(a.region->label);
    if (a.origin) j["origin"] = to_json(*a.origin);
    j["elliptic_bounded"] = a.bounded == EllipticBound::Bounded
                                ? "bounded"
                                : (a.bounded == EllipticBound::Unbounded ? "unbounded" : "unknown");
    nlohmann::ordered_json crits = nlohmann::ordered_json::array();
    for (const auto& r : a.criteria) crits.push_back(to_json(r));
    j["criteria"] = crits;
    if (!a.skipped.empty()) j["skipped"] = a.skipped;
    if (a.portrait) j["atlas"] = to_json(*a.portrait);
    return j;
}

/// Overall verdict drawn from the individual criteria, strongest first.
inline Verdict best_verdict(const Analysis& a) {
    Verdict best = Verdict::Inconclusive;
    for (const auto& r : a.criteria) {
        if (r.verdict == Verdict::NoClosedOrbits) return Verdict::NoClosedOrbits;
        if (r.verdict == Verdict::NoClosedOrbitsAroundOrigin) best = Verdict::NoClosedOrbitsAroundOrigin;
    }
    return best;
}

}  // namespace phase_sentinel
