#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "phase_sentinel/core/errors.hpp"
#include "phase_sentinel/core/symmetry.hpp"
#include "phase_sentinel/core/system.hpp"
#include "phase_sentinel/criteria/conjugate.hpp"
#include "phase_sentinel/criteria/report.hpp"
#include "phase_sentinel/num/roots.hpp"

namespace phase_sentinel {

inline double default_zeta(const PlanarSystem& sys) {
    return 1e-2 * std::min({-sys.alpha, sys.beta, 1.0});
}

namespace detail {

constexpr double kSignTol = 1e-9;

inline std::vector<double> y_grid(const SamplingGrid& grid) {
    std::vector<double> ys;
    ys.reserve(static_cast<std::size_t>(grid.ny));
    for (int j = 0; j < grid.ny; ++j)
        ys.push_back(-grid.y_cap + 2.0 * grid.y_cap * j / (grid.ny - 1));
    return ys;
}

struct SweepResult {
    ConditionStatus status = ConditionStatus::Undecided;
    int sign = 0;
    bool sampled = true;
    std::vector<Point> witnesses;
    std::string note;
};

// classify a sampled min/max pair into a one-signedness status
inline SweepResult classify_extrema(double minv, Point argmin, double maxv, Point argmax) {
    SweepResult out;
    if (maxv > kSignTol && minv < -kSignTol) {
        out.status = ConditionStatus::Violated;
        out.witnesses = {argmax, argmin};
        return out;
    }
    if (maxv > kSignTol) {
        out.status = ConditionStatus::Holds;
        out.sign = 1;
        return out;
    }
    if (minv < -kSignTol) {
        out.status = ConditionStatus::Holds;
        out.sign = -1;
        return out;
    }
    out.status = ConditionStatus::HoldsWithEqualityEverywhere;
    return out;
}

// one-signedness of a profile sampled on half-grid x (0, x_hi) times y grid
template <class Profile>
SweepResult sweep_profile(Profile profile, const std::vector<double>& xs, const std::vector<double>& ys) {
    double minv = kInf, maxv = -kInf;
    Point argmin, argmax;
    for (double x : xs)
        for (double y : ys) {
            double v = profile(x, y);
            if (v < minv) { minv = v; argmin = {x, y}; }
            if (v > maxv) { maxv = v; argmax = {x, y}; }
        }
    return classify_extrema(minv, argmin, maxv, argmax);
}

// even-in-x part of a polynomial f, doubled: f(x,y) + f(-x,y)
inline Poly2 reflection_profile_x(const Poly2& f) {
    Poly2 out;
    for (const auto& [ij, v] : f.m)
        if (ij.first % 2 == 0) out.add_term(ij.first, ij.second, 2.0 * v);
    return out;
}

// even-in-y part doubled: f(x,y) + f(x,-y)
inline Poly2 reflection_profile_y(const Poly2& f) {
    Poly2 out;
    for (const auto& [ij, v] : f.m)
        if (ij.second % 2 == 0) out.add_term(ij.first, ij.second, 2.0 * v);
    return out;
}

// sign test applicable when every monomial is a square: c x^(2i) y^(2j)
inline std::optional<int> square_monomial_sign(const Poly2& p) {
    bool all_even = true, has_pos = false, has_neg = false;
    for (const auto& [ij, v] : p.m) {
        if (ij.first % 2 != 0 || ij.second % 2 != 0) all_even = false;
        (v > 0.0 ? has_pos : has_neg) = true;
    }
    if (!all_even || (has_pos && has_neg)) return std::nullopt;
    return has_pos ? 1 : -1;
}

inline ConditionRecord condition_i(const PlanarSystem& sys, const SamplingGrid& grid) {
    ConditionRecord rec;
    rec.id = "i";
    double hi = std::min(sys.beta * 0.999, grid.x_cap);
    double lo = std::max(sys.alpha * 0.999, -grid.x_cap);

    if (const Poly1* gp = sys.g.poly()) {
        for (double r : poly_real_roots(*gp, lo, hi)) {
            if (std::abs(r) > 1e-9) {
                rec.status = ConditionStatus::Violated;
                rec.witnesses = {{r, 0.0}};
                rec.note = "g has a zero away from the origin";
                return rec;
            }
        }
        rec.sampled = false;
    }
    for (double x : log_biased_grid(hi, grid.nx)) {
        if (x * sys.g.eval(x) <= 0.0) {
            rec.status = ConditionStatus::Violated;
            rec.witnesses = {{x, 0.0}};
            return rec;
        }
    }
    for (double x : log_biased_grid(-lo, grid.nx)) {
        // at -x < 0 the condition reads (-x) g(-x) > 0
        if (-x * sys.g.eval(-x) <= 0.0) {
            rec.status = ConditionStatus::Violated;
            rec.witnesses = {{-x, 0.0}};
            return rec;
        }
    }
    rec.status = ConditionStatus::Holds;
    return rec;
}

inline ConditionRecord condition_ii(const PlanarSystem& sys, const SamplingGrid& grid) {
    ConditionRecord rec;
    rec.id = "ii";
    rec.status = ConditionStatus::Holds;
    double X = std::min({grid.x_cap, -sys.alpha, sys.beta});
    if (const Poly1* gp = sys.g.poly()) {
        Poly1 d = gp->derivative();
        double bound = 0.0;
        for (int i = 0; i <= d.degree(); ++i) bound += std::abs(d.coeff(i)) * std::pow(X, i);
        rec.sampled = false;
        rec.note = "g slope bound " + std::to_string(bound) + " on the sample box";
    } else if (const PiecewiseLinear* pw = sys.g.piecewise()) {
        rec.sampled = false;
        rec.note = "g slope bound " + std::to_string(pw->max_abs_slope());
    } else {
        rec.note = "g taken on trust (opaque)";
    }
    if (!sys.f.poly()) rec.note += "; f taken on trust (opaque)";
    return rec;
}

// condition (iii) / (iii'): one global sign of the reflection profile
inline ConditionRecord condition_reflection(const PlanarSystem& sys, const SamplingGrid& grid, bool x_reflection) {
    ConditionRecord rec;
    rec.id = x_reflection ? "iii" : "iii'";
    const Poly2* fp = sys.f.poly();
    if (fp) {
        Poly2 prof = x_reflection ? reflection_profile_x(*fp) : reflection_profile_y(*fp);
        if (prof.is_zero()) {
            rec.status = ConditionStatus::HoldsWithEqualityEverywhere;
            rec.sampled = false;
            return rec;
        }
        if (auto s = square_monomial_sign(prof)) {
            rec.status = ConditionStatus::Holds;
            rec.sign = *s;
            rec.sampled = false;
            return rec;
        }
    }
    std::vector<double> xs;
    if (x_reflection) {
        double core = symmetric_core(sys, grid.x_cap);
        xs = log_biased_grid(core * 0.999, grid.nx);
    } else {
        // the y-reflection condition spans the whole strip, side by side
        for (double x : log_biased_grid(std::min(sys.beta, grid.x_cap) * 0.999, grid.nx)) xs.push_back(x);
        for (double x : log_biased_grid(std::min(-sys.alpha, grid.x_cap) * 0.999, grid.nx)) xs.push_back(-x);
    }
    auto profile = [&](double x, double y) {
        return x_reflection ? sys.f.eval(x, y) + sys.f.eval(-x, y) : sys.f.eval(x, y) + sys.f.eval(x, -y);
    };
    SweepResult sw = sweep_profile(profile, xs, y_grid(grid));
    rec.status = sw.status;
    rec.sign = sw.sign;
    rec.witnesses = sw.witnesses;
    rec.sampled = true;
    return rec;
}

// condition (iv): a strict witness of the x-reflection profile in (0, zeta) x [-Y, Y]
inline ConditionRecord condition_iv(const PlanarSystem& sys, double zeta, const SamplingGrid& grid) {
    ConditionRecord rec;
    rec.id = "iv";
    const Poly2* fp = sys.f.poly();
    bool exactly_zero = false;
    if (fp) {
        Poly2 prof = reflection_profile_x(*fp);
        exactly_zero = prof.is_zero();
        rec.sampled = false;
    }
    if (exactly_zero) {
        rec.status = ConditionStatus::Violated;
        rec.note = "f(x,y) + f(-x,y) vanishes identically";
        return rec;
    }
    for (double x : log_biased_grid(zeta * 0.999, 64)) {
        for (double y : y_grid(grid)) {
            double v = sys.f.eval(x, y) + sys.f.eval(-x, y);
            if (std::abs(v) > kSignTol) {
                rec.status = ConditionStatus::Holds;
                rec.witnesses = {{x, y}};
                rec.sampled = true;
                return rec;
            }
        }
    }
    rec.status = ConditionStatus::Undecided;
    rec.note = "no strict witness found in (0, zeta)";
    rec.sampled = true;
    return rec;
}

inline void require_odd_g(const PlanarSystem& sys) {
    if (!g_is_odd(sys))
        throw NotOddG("g(x) + g(-x) exceeds tolerance on the symmetric core");
}

inline bool holds(const ConditionRecord& r) { return r.status == ConditionStatus::Holds; }

}  // namespace detail

/// Nonexistence of closed orbits in the strip for odd g: sign condition,
/// Lipschitz profiles, a one-signed x-reflection profile with a strict
/// witness near the origin.
inline CriterionReport check_thm1(const PlanarSystem& sys, double zeta = 0.0, const SamplingGrid& grid = {}) {
    detail::require_odd_g(sys);
    if (zeta <= 0.0) zeta = default_zeta(sys);
    CriterionReport rep;
    rep.theorem = TheoremTag::T1;
    rep.scope = "strip";
    rep.grid = grid;
    rep.conditions.push_back(detail::condition_i(sys, grid));
    rep.conditions.push_back(detail::condition_ii(sys, grid));
    rep.conditions.push_back(detail::condition_reflection(sys, grid, true));
    rep.conditions.push_back(detail::condition_iv(sys, zeta, grid));
    bool ok = detail::holds(rep.conditions[0]) && detail::holds(rep.conditions[1]) &&
              detail::holds(rep.conditions[2]) && detail::holds(rep.conditions[3]);
    rep.verdict = ok ? Verdict::NoClosedOrbits : Verdict::Inconclusive;
    return rep;
}

/// Variant driven by the y-reflection profile f(x,y) + f(x,-y); the strict
/// witness hypothesis (iv) is kept exactly as stated even though it reflects
/// in x, and the report flags the mismatch when it alone fails.
inline CriterionReport check_thm1b(const PlanarSystem& sys, double zeta = 0.0, const SamplingGrid& grid = {}) {
    if (zeta <= 0.0) zeta = default_zeta(sys);
    CriterionReport rep;
    rep.theorem = TheoremTag::T1b;
    rep.scope = "strip";
    rep.grid = grid;
    rep.conditions.push_back(detail::condition_i(sys, grid));
    rep.conditions.push_back(detail::condition_ii(sys, grid));
    rep.conditions.push_back(detail::condition_reflection(sys, grid, false));
    rep.conditions.push_back(detail::condition_iv(sys, zeta, grid));
    bool ok = detail::holds(rep.conditions[0]) && detail::holds(rep.conditions[1]) &&
              detail::holds(rep.conditions[2]) && detail::holds(rep.conditions[3]);
    if (detail::holds(rep.conditions[2]) && !detail::holds(rep.conditions[3]))
        rep.flags.push_back("(iii') holds but the x-reflection strictness (iv) fails; "
                            "the hypothesis list follows the stated theorem");
    rep.verdict = ok ? Verdict::NoClosedOrbits : Verdict::Inconclusive;
    return rep;
}

/// Conjugate-point criterion for non-odd g: one global sign of
/// f(x,y)/g(x) - f(x^,y)/g(x^) over potential-matched pairs, strict near 0.
inline CriterionReport check_thm2(const PlanarSystem& sys, int p, int q, double zeta = 0.0,
                                  const SamplingGrid& grid = {}, double h0_declared = 0.0) {
    if (p % 2 == 0 || q % 2 == 0) throw BadExponent("p and q must both be odd");
    if (static_cast<double>(p) / q < 1.0) throw BadExponent("m = p/q must be at least 1");
    if (zeta <= 0.0) zeta = default_zeta(sys);

    double h0 = h0_declared;
    if (const Poly1* gp = sys.g.poly()) {
        auto [lead, deg] = gp->leading_from(0);
        if (q == 1 && deg != p) throw Error("declared exponent does not match the leading degree of g");
        if (h0 <= 0.0) h0 = lead;
    }
    if (h0 <= 0.0) throw Error("check_thm2 requires h(0) > 0, declared or derived");

    CriterionReport rep;
    rep.theorem = TheoremTag::T2;
    rep.scope = "strip";
    rep.grid = grid;
    rep.conditions.push_back(detail::condition_i(sys, grid));
    rep.conditions.push_back(detail::condition_ii(sys, grid));

    ConjugateMap cm{sys.g, 1e-10};

    // cap the sampled x so that every conjugate point exists
    double x_hi = std::min(sys.beta * 0.999, grid.x_cap);
    double alpha_probe = std::isfinite(sys.alpha) ? sys.alpha * (1.0 - 1e-9) : -grid.x_cap * 4.0;
    double reach = field_potential(sys.g, alpha_probe) * 0.95;
    if (field_potential(sys.g, x_hi) > reach) {
        auto h = [&](double s) { return field_potential(sys.g, s) - reach; };
        x_hi = bisect(h, 0.0, x_hi, 1e-12);
    }

    std::vector<double> xs = log_biased_grid(x_hi, std::min(grid.nx, 64));
    std::vector<double> ys = detail::y_grid(grid);
    double minv = kInf, maxv = -kInf;
    Point argmin, argmax;
    auto ratio_diff = [&](double x, double xh, double y) {
        return sys.f.eval(x, y) / sys.g.eval(x) - sys.f.eval(xh, y) / sys.g.eval(xh);
    };
    for (double x : xs) {
        double xh = conjugate_point(cm, x);
        for (double y : ys) {
            double v = ratio_diff(x, xh, y);
            if (v < minv) { minv = v; argmin = {x, y}; }
            if (v > maxv) { maxv = v; argmax = {x, y}; }
        }
    }
    detail::SweepResult sw = detail::classify_extrema(minv, argmin, maxv, argmax);
    ConditionRecord cv;
    cv.id = "v";
    cv.status = sw.status;
    cv.sign = sw.sign;
    cv.witnesses = sw.witnesses;
    cv.sampled = true;
    rep.conditions.push_back(cv);

    ConditionRecord cvi;
    cvi.id = "vi";
    cvi.sampled = true;
    cvi.status = ConditionStatus::Undecided;
    for (double x : log_biased_grid(std::min(zeta, x_hi) * 0.999, 48)) {
        double xh = conjugate_point(cm, x);
        for (double y : ys) {
            if (std::abs(ratio_diff(x, xh, y)) > detail::kSignTol) {
                cvi.status = ConditionStatus::Holds;
                cvi.witnesses = {{x, y}};
                break;
            }
        }
        if (cvi.status == ConditionStatus::Holds) break;
    }
    if (cvi.status != ConditionStatus::Holds) {
        cvi.status = ConditionStatus::Violated;
        cvi.note = "ratio difference vanishes on (0, zeta)";
    }
    rep.conditions.push_back(cvi);

    bool ok = detail::holds(rep.conditions[0]) && detail::holds(rep.conditions[1]) &&
              detail::holds(rep.conditions[2]) && detail::holds(rep.conditions[3]);
    rep.verdict = ok ? Verdict::NoClosedOrbits : Verdict::Inconclusive;
    return rep;
}

/// Odd-g criterion without the sign condition: other equilibria may exist,
/// so the conclusion only excludes closed orbits surrounding the origin.
inline CriterionReport check_thm3(const PlanarSystem& sys, double zeta = 0.0, const SamplingGrid& grid = {}) {
    detail::require_odd_g(sys);
    if (zeta <= 0.0) zeta = default_zeta(sys);
    CriterionReport rep;
    rep.theorem = TheoremTag::T3;
    rep.scope = "around O";
    rep.grid = grid;
    rep.conditions.push_back(detail::condition_ii(sys, grid));
    rep.conditions.push_back(detail::condition_reflection(sys, grid, true));
    rep.conditions.push_back(detail::condition_iv(sys, zeta, grid));
    bool ok = detail::holds(rep.conditions[0]) && detail::holds(rep.conditions[1]) &&
              detail::holds(rep.conditions[2]);
    rep.verdict = ok ? Verdict::NoClosedOrbitsAroundOrigin : Verdict::Inconclusive;
    return rep;
}

}  // namespace phase_sentinel
