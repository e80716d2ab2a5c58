#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "phase_sentinel/core/errors.hpp"
#include "phase_sentinel/core/system.hpp"

namespace phase_sentinel {

enum class EventKind { PosYAxis, NegYAxis, PosXAxis, NegXAxis };

inline const char* event_kind_name(EventKind k) {
    switch (k) {
        case EventKind::PosYAxis: return "pos-y-axis";
        case EventKind::NegYAxis: return "neg-y-axis";
        case EventKind::PosXAxis: return "pos-x-axis";
        default: return "neg-x-axis";
    }
}

enum class Termination { TimeLimit, Escaped, Converged, SectionHit };

inline const char* termination_name(Termination t) {
    switch (t) {
        case Termination::TimeLimit: return "time-limit";
        case Termination::Escaped: return "escaped";
        case Termination::Converged: return "converged-to";
        default: return "section-hit";
    }
}

struct OrbitEvent {
    EventKind kind;
    double t, x, y;
};

struct OrbitTrace {
    struct Sample {
        double t, x, y;
        double w;  // accumulated work integral along the orbit
    };
    std::vector<Sample> samples;
    std::vector<OrbitEvent> events;
    Termination termination = Termination::TimeLimit;
    Point converged_to{0.0, 0.0};
    double escape_radius = kInf;

    const Sample& back() const { return samples.back(); }
};

struct IntegrateOptions {
    double tol = 1e-9;           // absolute and relative local error target
    double t_end = 100.0;
    double escape_radius = kInf; // terminate Escaped beyond this (relative to origin)
    double hard_radius = 1e9;    // EscapeAbort beyond this
    Point converge_center{0.0, 0.0};
    double converge_radius = 0.0;     // 0 disables convergence detection
    int converge_hysteresis = 10;     // consecutive accepted steps inside
    // near-degenerate equilibria, a passing orbit can dwell inside the ball;
    // a y-axis crossing restarts the count so transits are not mistaken for
    // convergence (orbits tangent to an exceptional direction never cross)
    bool converge_resets_on_x_crossing = false;
    double h_max = kInf;
    std::size_t max_steps = 5'000'000;
    int max_consecutive_rejects = 60;
    bool record_samples = true;
    // stop the integration at the first event for which this returns true
    std::function<bool(const OrbitEvent&)> stop_event;
};

/// Field wrappers.  A field is anything with `Velocity operator()(double, double) const`.
struct SystemField {
    const PlanarSystem* sys;
    Velocity operator()(double x, double y) const { return sys->eval(x, y); }
};

template <class F>
struct ReversedField {
    F inner;
    Velocity operator()(double x, double y) const {
        Velocity v = inner(x, y);
        return {-v.vx, -v.vy};
    }
};

template <class F>
struct ShiftedField {
    F inner;
    double x0, y0;
    Velocity operator()(double x, double y) const { return inner(x + x0, y + y0); }
};

/// Classical Lienard form  x' = y - F(x),  y' = -g(x).
struct LienardField {
    const ScalarField1D* F;
    const ScalarField1D* g;
    Velocity operator()(double x, double y) const { return {y - F->eval(x), -g->eval(x)}; }
};

struct ZeroWork {
    double operator()(double, double) const { return 0.0; }
};

/// Energy dissipation rate -f(x,y) y^2 of the planar system.
struct DissipationRate {
    const PlanarSystem* sys;
    double operator()(double x, double y) const { return -sys->f.eval(x, y) * y * y; }
};

namespace detail {

// Dormand-Prince 5(4) tableau
struct DP54 {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;
};

struct State3 {
    double x, y, w;
};

struct Deriv3 {
    double dx, dy, dw;
};

// cubic Hermite interpolation over one accepted step
struct HermiteSeg {
    double t0, t1;
    State3 y0, y1;
    Deriv3 f0, f1;

    State3 at(double t) const {
        double h = t1 - t0;
        double s = (t - t0) / h;
        double s2 = s * s, s3 = s2 * s;
        double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
        double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
        State3 out;
        out.x = h00 * y0.x + h10 * h * f0.dx + h01 * y1.x + h11 * h * f1.dx;
        out.y = h00 * y0.y + h10 * h * f0.dy + h01 * y1.y + h11 * h * f1.dy;
        out.w = h00 * y0.w + h10 * h * f0.dw + h01 * y1.w + h11 * h * f1.dw;
        return out;
    }
};

// locate zero crossings of coord(t) inside the segment by scanning subintervals,
// then bisecting each sign change; t resolved to ~1e-12
template <class Coord>
inline void hermite_crossings(const HermiteSeg& seg, Coord coord, std::vector<double>& out) {
    constexpr int kScan = 8;
    double prev_t = seg.t0;
    double prev_v = coord(seg.y0);
    for (int i = 1; i <= kScan; ++i) {
        double t = seg.t0 + (seg.t1 - seg.t0) * i / kScan;
        State3 s = (i == kScan) ? seg.y1 : seg.at(t);
        double v = coord(s);
        if (prev_v == 0.0) {
            // landing exactly on the axis is handled by the caller via signs
        } else if (v == 0.0 || (prev_v < 0.0) != (v < 0.0)) {
            double lo = prev_t, hi = t, vlo = prev_v;
            for (int it = 0; it < 100 && hi - lo > 1e-13 * std::max(1.0, std::abs(hi)); ++it) {
                double mid = 0.5 * (lo + hi);
                double vm = coord(seg.at(mid));
                if (vm == 0.0) { lo = hi = mid; break; }
                if ((vlo < 0.0) == (vm < 0.0)) { lo = mid; vlo = vm; }
                else hi = mid;
            }
            out.push_back(0.5 * (lo + hi));
        }
        prev_t = t;
        prev_v = v;
    }
}

}  // namespace detail

/// Adaptive Dormand-Prince 5(4) integration with axis-crossing events and a
/// work integral carried through the same stages.
template <class Field, class Work = ZeroWork>
OrbitTrace integrate_field(const Field& field, Point p0, const IntegrateOptions& opts, Work work = {}) {
    using detail::DP54;
    using detail::State3;
    using detail::Deriv3;

    auto rhs = [&](const State3& s) -> Deriv3 {
        Velocity v = field(s.x, s.y);
        return {v.vx, v.vy, work(s.x, s.y)};
    };

    OrbitTrace trace;
    trace.escape_radius = opts.escape_radius;

    State3 y{p0.x, p0.y, 0.0};
    double t = 0.0;
    Deriv3 k1 = rhs(y);

    if (opts.record_samples) trace.samples.push_back({t, y.x, y.y, y.w});

    // initial step from the local velocity scale
    double vnorm = std::hypot(k1.dx, k1.dy);
    double ynorm = std::max(1.0, std::hypot(y.x, y.y));
    double h = (vnorm > 1e-300) ? 0.01 * ynorm / vnorm : 1e-3;
    h = std::min({h, opts.h_max, opts.t_end});

    int inside_count = 0;
    int consecutive_rejects = 0;
    bool stopped = false;

    auto finish_sample = [&](double tf, const State3& sf) {
        if (opts.record_samples) trace.samples.push_back({tf, sf.x, sf.y, sf.w});
        else trace.samples.assign(1, {tf, sf.x, sf.y, sf.w});
    };

    for (std::size_t step = 0; step < opts.max_steps && !stopped; ++step) {
        bool last_step = false;
        if (t + h >= opts.t_end) {
            h = opts.t_end - t;
            last_step = true;
            if (h <= 0.0) {
                trace.termination = Termination::TimeLimit;
                break;
            }
        }

        auto stage = [&](double ax, double ay, double aw) { return State3{y.x + h * ax, y.y + h * ay, y.w + h * aw}; };
        Deriv3 k2 = rhs(stage(DP54::a21 * k1.dx, DP54::a21 * k1.dy, DP54::a21 * k1.dw));
        Deriv3 k3 = rhs(stage(DP54::a31 * k1.dx + DP54::a32 * k2.dx, DP54::a31 * k1.dy + DP54::a32 * k2.dy,
                              DP54::a31 * k1.dw + DP54::a32 * k2.dw));
        Deriv3 k4 = rhs(stage(DP54::a41 * k1.dx + DP54::a42 * k2.dx + DP54::a43 * k3.dx,
                              DP54::a41 * k1.dy + DP54::a42 * k2.dy + DP54::a43 * k3.dy,
                              DP54::a41 * k1.dw + DP54::a42 * k2.dw + DP54::a43 * k3.dw));
        Deriv3 k5 = rhs(stage(DP54::a51 * k1.dx + DP54::a52 * k2.dx + DP54::a53 * k3.dx + DP54::a54 * k4.dx,
                              DP54::a51 * k1.dy + DP54::a52 * k2.dy + DP54::a53 * k3.dy + DP54::a54 * k4.dy,
                              DP54::a51 * k1.dw + DP54::a52 * k2.dw + DP54::a53 * k3.dw + DP54::a54 * k4.dw));
        Deriv3 k6 = rhs(stage(DP54::a61 * k1.dx + DP54::a62 * k2.dx + DP54::a63 * k3.dx + DP54::a64 * k4.dx + DP54::a65 * k5.dx,
                              DP54::a61 * k1.dy + DP54::a62 * k2.dy + DP54::a63 * k3.dy + DP54::a64 * k4.dy + DP54::a65 * k5.dy,
                              DP54::a61 * k1.dw + DP54::a62 * k2.dw + DP54::a63 * k3.dw + DP54::a64 * k4.dw + DP54::a65 * k5.dw));

        State3 y1;
        y1.x = y.x + h * (DP54::b1 * k1.dx + DP54::b3 * k3.dx + DP54::b4 * k4.dx + DP54::b5 * k5.dx + DP54::b6 * k6.dx);
        y1.y = y.y + h * (DP54::b1 * k1.dy + DP54::b3 * k3.dy + DP54::b4 * k4.dy + DP54::b5 * k5.dy + DP54::b6 * k6.dy);
        y1.w = y.w + h * (DP54::b1 * k1.dw + DP54::b3 * k3.dw + DP54::b4 * k4.dw + DP54::b5 * k5.dw + DP54::b6 * k6.dw);
        Deriv3 k7 = rhs(y1);  // FSAL

        double ex = h * (DP54::e1 * k1.dx + DP54::e3 * k3.dx + DP54::e4 * k4.dx + DP54::e5 * k5.dx + DP54::e6 * k6.dx + DP54::e7 * k7.dx);
        double ey = h * (DP54::e1 * k1.dy + DP54::e3 * k3.dy + DP54::e4 * k4.dy + DP54::e5 * k5.dy + DP54::e6 * k6.dy + DP54::e7 * k7.dy);
        double sx = opts.tol + opts.tol * std::max(std::abs(y.x), std::abs(y1.x));
        double sy = opts.tol + opts.tol * std::max(std::abs(y.y), std::abs(y1.y));
        double err = std::sqrt(0.5 * ((ex / sx) * (ex / sx) + (ey / sy) * (ey / sy)));
        if (!std::isfinite(err) || !std::isfinite(y1.x) || !std::isfinite(y1.y)) err = 1e10;

        if (err > 1.0) {
            if (++consecutive_rejects > opts.max_consecutive_rejects)
                throw StiffnessAbort("too many rejected steps");
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            if (!(h > 1e-15 * std::max(1.0, std::abs(t)))) throw StiffnessAbort("step size underflow");
            continue;
        }
        consecutive_rejects = 0;

        detail::HermiteSeg seg{t, t + h, y, y1, k1, k7};

        // axis events inside this step, scanned unconditionally: a step can
        // cross an axis and come back without changing its endpoint sign
        std::vector<std::pair<double, OrbitEvent>> found;
        std::vector<double> ts;
        detail::hermite_crossings(seg, [](const State3& s) { return s.x; }, ts);
        for (double tc : ts) {
            State3 s = seg.at(tc);
            EventKind kind = s.y > 0.0 ? EventKind::PosYAxis : EventKind::NegYAxis;
            found.push_back({tc, {kind, tc, s.x, s.y}});
        }
        ts.clear();
        detail::hermite_crossings(seg, [](const State3& s) { return s.y; }, ts);
        for (double tc : ts) {
            State3 s = seg.at(tc);
            EventKind kind = s.x > 0.0 ? EventKind::PosXAxis : EventKind::NegXAxis;
            found.push_back({tc, {kind, tc, s.x, s.y}});
        }
        std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        bool crossed_x = false;
        for (const auto& [tc, ev] : found) {
            trace.events.push_back(ev);
            if (ev.kind == EventKind::PosYAxis || ev.kind == EventKind::NegYAxis) crossed_x = true;
            if (opts.stop_event && opts.stop_event(ev)) {
                State3 s = seg.at(tc);
                finish_sample(tc, s);
                trace.termination = Termination::SectionHit;
                stopped = true;
                break;
            }
        }
        if (stopped) break;

        t += h;
        y = y1;
        k1 = k7;
        if (opts.record_samples) trace.samples.push_back({t, y.x, y.y, y.w});

        double r = std::hypot(y.x, y.y);
        if (r > opts.hard_radius) throw EscapeAbort("orbit left the hard safety radius");
        if (r > opts.escape_radius) {
            if (!opts.record_samples) trace.samples.assign(1, {t, y.x, y.y, y.w});
            trace.termination = Termination::Escaped;
            break;
        }
        if (opts.converge_radius > 0.0) {
            double rc = std::hypot(y.x - opts.converge_center.x, y.y - opts.converge_center.y);
            if (opts.converge_resets_on_x_crossing && crossed_x) inside_count = 0;
            inside_count = (rc < opts.converge_radius) ? inside_count + 1 : 0;
            if (inside_count >= opts.converge_hysteresis) {
                if (!opts.record_samples) trace.samples.assign(1, {t, y.x, y.y, y.w});
                trace.termination = Termination::Converged;
                trace.converged_to = opts.converge_center;
                break;
            }
        }
        if (last_step) {
            trace.termination = Termination::TimeLimit;
            if (!opts.record_samples) trace.samples.assign(1, {t, y.x, y.y, y.w});
            break;
        }

        h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-10), -0.2)));
        h = std::min(h, opts.h_max);
    }

    if (trace.samples.empty()) trace.samples.push_back({t, y.x, y.y, y.w});
    if (!stopped && !opts.record_samples && trace.samples.back().t != t)
        trace.samples.assign(1, {t, y.x, y.y, y.w});
    return trace;
}

/// Integrate the planar system itself; the trace carries the work integral of
/// -f y^2 so the energy identity can be audited afterwards.
inline OrbitTrace integrate(const PlanarSystem& sys, Point p0, const IntegrateOptions& opts = {}) {
    return integrate_field(SystemField{&sys}, p0, opts, DissipationRate{&sys});
}

}  // namespace phase_sentinel
