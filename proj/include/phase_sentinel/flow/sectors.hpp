#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "phase_sentinel/core/symmetry.hpp"
#include "phase_sentinel/flow/integrate.hpp"
#include "phase_sentinel/num/quad.hpp"
#include "phase_sentinel/num/roots.hpp"

namespace phase_sentinel {

/// Max deviation from the energy identity dE/dt = -f y^2 along a trace: the
/// work integral carried by the integrator is compared against E(end)-E(start)
/// sample by sample, normalized by the largest dissipation rate seen.
inline double energy_residual(const PlanarSystem& sys, const OrbitTrace& trace) {
    if (trace.samples.size() < 2) return 0.0;
    auto energy = [&](double x, double y) { return sys.potential(x) + 0.5 * y * y; };
    double e0 = energy(trace.samples.front().x, trace.samples.front().y);
    double max_rate = 0.0;
    for (const auto& s : trace.samples)
        max_rate = std::max(max_rate, std::abs(sys.f.eval(s.x, s.y) * s.y * s.y));
    double worst = 0.0;
    for (const auto& s : trace.samples) {
        double lhs = energy(s.x, s.y) - e0;
        worst = std::max(worst, std::abs(lhs - s.w));
    }
    return worst / std::max(1.0, max_rate);
}

/// Classical Lienard data x' = y - F(x), y' = -g(x).
struct LienardForm {
    ScalarField1D F;
    ScalarField1D g;
};

/// Reduce a system whose f depends on x only: F(x) = int_0^x f.
inline LienardForm to_lienard(const PlanarSystem& sys) {
    LienardForm out;
    out.g = sys.g;
    if (const Poly2* fp = sys.f.poly()) {
        Poly1 profile;
        for (const auto& [ij, v] : fp->m) {
            if (ij.second != 0) throw NotXOnly("f depends on y");
            profile.set_coeff(ij.first, v);
        }
        out.F = ScalarField1D(profile.antiderivative(), sys.alpha, sys.beta);
        return out;
    }
    const Opaque2D* op = sys.f.opaque();
    if (op && op->x_only_profile) {
        auto prof = op->x_only_profile;
        Opaque1D F;
        F.fn = [prof](double x) { return integrate_1d(prof, 0.0, x); };
        F.smooth = op->smooth;
        out.F = ScalarField1D(F, sys.alpha, sys.beta);
        return out;
    }
    throw NotXOnly("f is not declared as a function of x alone");
}

enum class BoundedEllipticKind { Bounded, HypothesisUnmet, DivergenceUnmet };

struct BoundedEllipticResult {
    BoundedEllipticKind kind;
    double x0 = 0.0;  // smallest-magnitude nonzero root of F when Bounded
    std::string note;
};

namespace detail {

inline bool potential_diverges(const ScalarField1D& g, double beta) {
    if (const Poly1* p = g.poly()) return p->degree() >= 1;
    if (const PiecewiseLinear* pw = g.piecewise()) {
        const auto& last = pw->segments.back();
        return last.slope > 0.0 || (last.slope == 0.0 && last.intercept > 0.0);
    }
    // opaque: growth probe of G on an expanding ladder
    double cap = std::min(beta * 0.999, 1e4);
    double g10 = integrate_1d([&g](double x) { return g.eval(x); }, 0.0, std::min(10.0, cap));
    double gBig = integrate_1d([&g](double x) { return g.eval(x); }, 0.0, cap);
    return gBig > std::max(10.0 * g10, 1e3);
}

}  // namespace detail

/// Boundedness certificate for the elliptic sector of a Lienard system: a
/// nonzero root of F suffices once x g(x) > 0 and the potential diverges.
/// Callers are responsible for having checked the nilpotent subdivision.
inline BoundedEllipticResult bounded_elliptic_test(const LienardForm& lf, double search_radius) {
    BoundedEllipticResult out{BoundedEllipticKind::HypothesisUnmet, 0.0, ""};

    double lo = std::max(lf.g.alpha, -search_radius);
    double hi = std::min(lf.g.beta, search_radius);
    for (double x : log_biased_grid(hi * 0.999, 81)) {
        if (x * lf.g.eval(x) <= 0.0) {
            out.note = "x g(x) > 0 fails on the sampled domain";
            return out;
        }
    }
    for (double x : log_biased_grid(-lo * 0.999, 81)) {
        if (-x * lf.g.eval(-x) <= 0.0) {
            out.note = "x g(x) > 0 fails on the sampled domain";
            return out;
        }
    }

    if (!detail::potential_diverges(lf.g, lf.g.beta)) {
        out.kind = BoundedEllipticKind::DivergenceUnmet;
        out.note = "int_0^inf g does not diverge";
        return out;
    }

    // scan outward on both sides for the first sign change of F
    auto scan_side = [&](double limit) -> std::optional<double> {
        const int n = 20000;
        double prev_x = 0.0;
        bool have_sign = false;
        int prev_sign = 0;
        for (int i = 1; i <= n; ++i) {
            double x = limit * i / n;
            double v = lf.F.eval(x);
            int s = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
            if (s != 0 && have_sign && s != prev_sign)
                return bisect([&lf](double u) { return lf.F.eval(u); }, std::min(prev_x, x),
                              std::max(prev_x, x), 1e-13);
            if (s == 0 && have_sign && i > 1) return x;  // landed exactly on a root
            if (s != 0) {
                prev_sign = s;
                have_sign = true;
            }
            prev_x = x;
        }
        return std::nullopt;
    };

    std::optional<double> pos = scan_side(hi * 0.999);
    std::optional<double> neg = scan_side(lo * 0.999);  // limit < 0 walks the negative side
    std::optional<double> best;
    if (pos) best = *pos;
    if (neg && (!best || std::abs(*neg) < std::abs(*best))) best = *neg;
    if (!best) {
        out.note = "F has no nonzero root within the search radius";
        return out;
    }
    out.kind = BoundedEllipticKind::Bounded;
    out.x0 = *best;
    return out;
}

enum class SectorConfidence { ExactBySymmetry, Empirical };

struct SectorSummary {
    int elliptic = 0;
    int hyperbolic = 0;
    int parabolic = 0;
    double probe_radius = 0.0;
    SectorConfidence confidence = SectorConfidence::Empirical;
};

struct SectorProbeOptions {
    int n_rays = 64;            // initial rays; boundaries are refined adaptively
    int refine_depth = 5;
    double tol = 1e-9;
    double t_cap = 1e9;         // wall time is bounded by max_steps, not t_cap
    std::size_t max_steps = 2'000'000;
    int circulation_crossings = 2;  // upward y-axis crossings that flag circulation
    double max_ambiguous_fraction = 0.25;
};

namespace detail {

// Limit behaviour of one semi-orbit relative to the probe ball.  Orbits that
// keep winding around the origin (their limit set is a periodic orbit or a
// homoclinic graphic, not O) count as transits, exactly like orbits that
// leave the 4*delta ball.  For converging orbits the sign of x at arrival
// identifies which exceptional direction (theta = 0 or pi) was taken.
enum class LimitKind { Origin, Leaves, Circulates, Ambiguous };

struct SemiOrbitLimit {
    LimitKind kind = LimitKind::Ambiguous;
    int x_sign = 0;  // sign of x at convergence
};

template <class Field>
SemiOrbitLimit limit_of(const Field& field, Point p0, double delta, const SectorProbeOptions& po) {
    IntegrateOptions opts;
    opts.tol = po.tol;
    opts.t_end = po.t_cap;
    opts.max_steps = po.max_steps;
    opts.escape_radius = 4.0 * delta;
    opts.converge_radius = std::max(1e-6, std::min(1e-3, 1e-2 * delta));
    opts.converge_hysteresis = 10;
    opts.converge_resets_on_x_crossing = true;
    opts.record_samples = false;
    int upward = 0;
    int needed = po.circulation_crossings;
    opts.stop_event = [&upward, needed](const OrbitEvent& ev) {
        return ev.kind == EventKind::PosYAxis && ++upward >= needed;
    };
    OrbitTrace tr = integrate_field(field, p0, opts);
    switch (tr.termination) {
        case Termination::Converged:
            return {LimitKind::Origin, tr.back().x >= 0.0 ? 1 : -1};
        case Termination::Escaped: return {LimitKind::Leaves, 0};
        case Termination::SectionHit: return {LimitKind::Circulates, 0};
        default: return {LimitKind::Ambiguous, 0};
    }
}

}  // namespace detail

/// Empirical sector decomposition at radius delta.
///
/// Rays on the probe circle are classified by the (alpha, omega)-limit pair
/// of their full orbit, then grouped into distinct orbit bundles: a bundle
/// can cross the circle more than once (a parabolic bundle sweeps past the
/// circle on earlier circuits before settling), so arcs are deduplicated by
/// their convergence signature (which time direction reaches O and on which
/// side of the y-axis).  Narrow arcs are caught by adaptive refinement
/// between differently-classified neighbours.  Hyperbolic transit arcs are
/// not separated further; a nilpotent origin of the class probed here has a
/// single hyperbolic sector.
inline SectorSummary sector_probe(const PlanarSystem& sys, double delta, const SectorProbeOptions& po = {}) {
    using detail::LimitKind;
    using detail::SemiOrbitLimit;

    SystemField fwd{&sys};
    ReversedField<SystemField> bwd{fwd};

    // token: -1 ambiguous; 0 hyperbolic; 1xy elliptic with fwd sign x, bwd
    // sign y; 2ds parabolic with converging end d (0 fwd, 1 bwd), sign s
    auto classify = [&](double theta) -> int {
        Point p{delta * std::cos(theta), delta * std::sin(theta)};
        SemiOrbitLimit f = detail::limit_of(fwd, p, delta, po);
        SemiOrbitLimit b = detail::limit_of(bwd, p, delta, po);
        if (f.kind == LimitKind::Ambiguous || b.kind == LimitKind::Ambiguous) return -1;
        bool fo = (f.kind == LimitKind::Origin);
        bool bo = (b.kind == LimitKind::Origin);
        if (fo && bo) return 100 + 10 * (f.x_sign > 0 ? 1 : 0) + (b.x_sign > 0 ? 1 : 0);
        if (!fo && !bo) return 0;
        if (fo) return 200 + (f.x_sign > 0 ? 1 : 0);
        return 210 + (b.x_sign > 0 ? 1 : 0);
    };

    std::map<double, int> rays;  // angle -> token
    for (int i = 0; i < po.n_rays; ++i) {
        double theta = 2.0 * M_PI * (i + 0.37) / po.n_rays;  // offset avoids symmetry axes
        rays[theta] = classify(theta);
    }
    for (int depth = 0; depth < po.refine_depth; ++depth) {
        std::vector<double> mids;
        for (auto it = rays.begin(); it != rays.end(); ++it) {
            auto next = std::next(it);
            double a0 = it->first;
            double a1 = (next == rays.end()) ? rays.begin()->first + 2.0 * M_PI : next->first;
            int c0 = it->second;
            int c1 = (next == rays.end()) ? rays.begin()->second : next->second;
            if (c0 != c1) mids.push_back(0.5 * (a0 + a1));
        }
        if (mids.empty()) break;
        for (double m : mids) {
            double wrapped = std::fmod(m, 2.0 * M_PI);
            rays[wrapped] = classify(wrapped);
        }
    }

    std::set<int> elliptic_tokens, parabolic_tokens;
    bool any_hyperbolic = false;
    int ambiguous = 0;
    for (const auto& [angle, token] : rays) {
        if (token < 0) ++ambiguous;
        else if (token == 0) any_hyperbolic = true;
        else if (token < 200) elliptic_tokens.insert(token);
        else parabolic_tokens.insert(token);
    }
    if (ambiguous > static_cast<int>(po.max_ambiguous_fraction * rays.size()))
        throw InconclusiveProbe("too many rays without a settled limit at this radius");

    SectorSummary out;
    out.probe_radius = delta;
    out.elliptic = static_cast<int>(elliptic_tokens.size());
    out.parabolic = static_cast<int>(parabolic_tokens.size());
    out.hyperbolic = any_hyperbolic ? 1 : 0;

    if (is_symmetric(sys)) {
        if (out.parabolic % 2 != 0)
            throw InconclusiveProbe("symmetric field but an odd parabolic count was measured");
        out.confidence = SectorConfidence::ExactBySymmetry;
    }
    return out;
}

}  // namespace phase_sentinel
