#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "phase_sentinel/flow/integrate.hpp"

namespace phase_sentinel {

enum class ReturnHalf { Half, Full };

struct ReturnMapSample {
    double y0 = 0.0;
    std::optional<double> y1;  // absent when the orbit escapes or converges first
    ReturnHalf half = ReturnHalf::Full;
};

struct ReturnMapOptions {
    double tol = 1e-9;
    double t_end = 1e4;
    double escape_radius = 1e4;
    double converge_radius = 1e-8;
    Point center{0.0, 0.0};   // section anchored at this equilibrium
    bool reversed = false;    // run the map in reversed time
};

/// First-return map on the upward vertical ray through `center`.  A half
/// return stops on the downward ray, a full return comes back to the upward
/// ray.  First-hit semantics throughout.
template <class Field>
ReturnMapSample return_map_field(const Field& field, double y0, ReturnHalf half, const ReturnMapOptions& ropts) {
    ReturnMapSample out;
    out.y0 = y0;
    out.half = half;

    IntegrateOptions opts;
    opts.tol = ropts.tol;
    opts.t_end = ropts.t_end;
    opts.escape_radius = ropts.escape_radius;
    opts.converge_radius = ropts.converge_radius;
    opts.record_samples = false;
    EventKind target = (half == ReturnHalf::Half) ? EventKind::NegYAxis : EventKind::PosYAxis;
    opts.stop_event = [target](const OrbitEvent& ev) { return ev.kind == target; };

    OrbitTrace tr = integrate_field(field, Point{0.0, y0}, opts);
    if (tr.termination == Termination::SectionHit && !tr.events.empty()) {
        const OrbitEvent& ev = tr.events.back();
        out.y1 = ev.y;
    }
    return out;
}

inline ReturnMapSample return_map(const PlanarSystem& sys, double y0, ReturnHalf half,
                                  const ReturnMapOptions& ropts = {}) {
    SystemField base{&sys};
    ShiftedField<SystemField> shifted{base, ropts.center.x, ropts.center.y};
    if (ropts.reversed) {
        ReversedField<ShiftedField<SystemField>> rev{shifted};
        return return_map_field(rev, y0, half, ropts);
    }
    return return_map_field(shifted, y0, half, ropts);
}

struct CycleSearch {
    double y_lo = 0.1;
    double y_hi = 10.0;
    int seeds = 10;
    Point center{0.0, 0.0};  // scope: section anchored around this point
    bool reversed = false;   // detect repelling cycles through the reversed map
    double tol = 1e-9;
    double displacement_zero = 1e-9;  // |R(y)-y| below this counts as no evidence
    double closure_gap = 1e-6;
};

/// Bracket-and-bisect limit-cycle finder on the full return map.  A sign
/// change of R(y)-y across the bracket is refined to a fixed point; a
/// monotone displacement yields no cycle.
inline std::optional<OrbitTrace> find_limit_cycle(const PlanarSystem& sys, const CycleSearch& cfg = {}) {
    ReturnMapOptions ropts;
    ropts.tol = cfg.tol;
    ropts.center = cfg.center;
    ropts.reversed = cfg.reversed;

    auto displacement = [&](double y) -> std::optional<double> {
        ReturnMapSample s = return_map(sys, y, ReturnHalf::Full, ropts);
        if (!s.y1) return std::nullopt;
        return *s.y1 - y;
    };

    std::vector<std::pair<double, double>> valid;  // (y0, R(y0)-y0)
    for (int i = 0; i < cfg.seeds; ++i) {
        double y = cfg.y_lo + (cfg.y_hi - cfg.y_lo) * i / std::max(1, cfg.seeds - 1);
        if (auto d = displacement(y)) valid.push_back({y, *d});
    }
    if (valid.size() < 2) return std::nullopt;

    double lo = 0.0, hi = 0.0;
    bool bracketed = false;
    for (std::size_t i = 0; i + 1 < valid.size(); ++i) {
        double d0 = valid[i].second, d1 = valid[i + 1].second;
        if (std::abs(d0) <= cfg.displacement_zero || std::abs(d1) <= cfg.displacement_zero) continue;
        if ((d0 < 0.0) != (d1 < 0.0)) {
            lo = valid[i].first;
            hi = valid[i + 1].first;
            bracketed = true;
            break;
        }
    }
    if (!bracketed) return std::nullopt;

    double dlo = *displacement(lo);
    for (int it = 0; it < 80 && (hi - lo) > 1e-12 * std::max(1.0, hi); ++it) {
        double mid = 0.5 * (lo + hi);
        auto dm = displacement(mid);
        if (!dm) return std::nullopt;  // bracket degenerated
        if ((*dm < 0.0) == (dlo < 0.0)) {
            lo = mid;
            dlo = *dm;
        } else {
            hi = mid;
        }
    }
    double y_star = 0.5 * (lo + hi);

    // record the closed trace through the fixed point
    SystemField base{&sys};
    ShiftedField<SystemField> shifted{base, cfg.center.x, cfg.center.y};
    IntegrateOptions opts;
    opts.tol = cfg.tol;
    opts.t_end = 1e4;
    opts.escape_radius = 1e4;
    int hits = 0;
    opts.stop_event = [&hits](const OrbitEvent& ev) {
        return ev.kind == EventKind::PosYAxis && ++hits >= 1;
    };
    OrbitTrace cycle;
    if (cfg.reversed) {
        ReversedField<ShiftedField<SystemField>> rev{shifted};
        cycle = integrate_field(rev, Point{0.0, y_star}, opts);
    } else {
        cycle = integrate_field(shifted, Point{0.0, y_star}, opts);
    }
    if (cycle.termination != Termination::SectionHit) return std::nullopt;
    double gap = std::hypot(cycle.back().x - 0.0, cycle.back().y - y_star);
    if (gap > cfg.closure_gap) return std::nullopt;
    // report in unshifted coordinates
    for (auto& s : cycle.samples) {
        s.x += cfg.center.x;
        s.y += cfg.center.y;
    }
    for (auto& e : cycle.events) {
        e.x += cfg.center.x;
        e.y += cfg.center.y;
    }
    return cycle;
}

}  // namespace phase_sentinel
