#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "phase_sentinel/core/errors.hpp"
#include "phase_sentinel/core/symmetry.hpp"
#include "phase_sentinel/core/system.hpp"
#include "phase_sentinel/criteria/report.hpp"
#include "phase_sentinel/criteria/theorems.hpp"
#include "phase_sentinel/num/roots.hpp"

namespace phase_sentinel {

/// Divergence test for the cubic family: div = -mu - a x^2 - 2 b x y - 3 c y^2
/// is one-signed exactly when b^2 <= 3 a c, and must not vanish identically.
inline CriterionReport dulac_baseline(const CubicParams& p) {
    CriterionReport rep;
    rep.theorem = TheoremTag::DulacB1;
    rep.scope = "strip";

    double disc = p.b * p.b - 3.0 * p.a * p.c;
    ConditionRecord sign_rec;
    sign_rec.id = "divergence-one-signed";
    sign_rec.sampled = false;
    sign_rec.note = "b^2 - 3ac = " + std::to_string(disc);
    sign_rec.status = disc <= 0.0 ? ConditionStatus::Holds : ConditionStatus::Violated;
    if (disc > 0.0) {
        // a sign-changing direction: along y = t, x = -2 b t / ... pick points
        sign_rec.witnesses = {{1.0, 0.0}, {1.0, p.b > 0 ? -1.0 : 1.0}};
    }
    rep.conditions.push_back(sign_rec);

    ConditionRecord nonzero_rec;
    nonzero_rec.id = "divergence-not-identically-zero";
    nonzero_rec.sampled = false;
    bool identically_zero = (p.mu == 0.0 && p.a == 0.0 && p.c == 0.0 && p.b == 0.0);
    nonzero_rec.status =
        identically_zero ? ConditionStatus::Violated : ConditionStatus::Holds;
    if (p.mu == 0.0 && p.a == 0.0 && p.c == 0.0) {
        // with b != 0 the divergence is -2bxy, which changes sign anyway
        nonzero_rec.note = "mu = a = c = 0";
        if (identically_zero) nonzero_rec.note += "; divergence vanishes identically";
    }
    rep.conditions.push_back(nonzero_rec);

    bool ok = rep.conditions[0].status == ConditionStatus::Holds &&
              rep.conditions[1].status == ConditionStatus::Holds &&
              (p.mu > 0.0 || p.a > 0.0 || p.c > 0.0);
    rep.verdict = ok ? Verdict::NoClosedOrbits : Verdict::Inconclusive;
    return rep;
}

/// Odd-part test for the classical Lienard form x' = y - F(x), y' = -x:
/// no closed orbits around the origin when the odd part of F has no zero
/// besides 0.
inline CriterionReport lmp_odd_part_check(const ScalarField1D& F) {
    const Poly1* fp = F.poly();
    if (!fp) throw Error("lmp_odd_part_check expects a polynomial F");
    if (fp->coeff(0) != 0.0) throw Error("lmp_odd_part_check expects F(0) = 0");

    CriterionReport rep;
    rep.theorem = TheoremTag::LMP;
    rep.scope = "around O";

    Poly1 odd;
    for (int i = 1; i <= fp->degree(); i += 2) odd.set_coeff(i, fp->coeff(i));

    ConditionRecord rec;
    rec.id = "odd-part-unique-zero";
    rec.sampled = false;
    if (odd.is_zero()) {
        rec.status = ConditionStatus::HoldsWithEqualityEverywhere;
        rec.note = "odd part vanishes identically";
        rep.conditions.push_back(rec);
        rep.verdict = Verdict::Inconclusive;
        return rep;
    }

    // roots of the odd part, including even-multiplicity ones (where the
    // derivative vanishes too)
    std::vector<double> candidates = poly_real_roots(odd);
    for (double r : poly_real_roots(odd.derivative())) {
        double cond = 0.0;
        for (int i = 0; i <= odd.degree(); ++i) cond += std::abs(odd.coeff(i)) * std::pow(std::abs(r), i);
        if (std::abs(odd.eval(r)) <= 1e-9 * (cond + 1.0)) candidates.push_back(r);
    }
    for (double r : candidates) {
        if (std::abs(r) > 1e-9) {
            rec.status = ConditionStatus::Violated;
            rec.witnesses = {{r, 0.0}};
            rec.note = "odd part vanishes away from the origin";
            rep.conditions.push_back(rec);
            rep.verdict = Verdict::Inconclusive;
            return rep;
        }
    }
    rec.status = ConditionStatus::Holds;
    rep.conditions.push_back(rec);
    rep.verdict = Verdict::NoClosedOrbitsAroundOrigin;
    return rep;
}

/// Potential-matched profile test for the generalized Lienard system
/// x' = y - F(x), y' = -g(x): H(w) = F at the negative potential-w point
/// minus F at the positive one, on 0 < w < min(w_max, M).
inline CriterionReport sugie_check(const ScalarField1D& F, const ScalarField1D& g, double w_max,
                                   const SamplingGrid& grid = {}) {
    CriterionReport rep;
    rep.theorem = TheoremTag::SugieB;
    rep.scope = "strip";
    rep.grid = grid;

    double beta_probe = std::isfinite(g.beta) ? g.beta * (1.0 - 1e-9) : grid.x_cap * 4.0;
    double alpha_probe = std::isfinite(g.alpha) ? g.alpha * (1.0 - 1e-9) : -grid.x_cap * 4.0;
    double m_plus = field_potential(g, beta_probe);
    double m_minus = field_potential(g, alpha_probe);
    double w_end = 0.95 * std::min({w_max, m_plus, m_minus});
    if (!(w_end > 0.0)) throw BranchError("no usable potential range on one side");

    auto invert = [&](double w, bool positive_side) -> double {
        auto h = [&](double s) { return field_potential(g, s) - w; };
        double r = positive_side ? bisect(h, 0.0, beta_probe, 1e-15) : bisect(h, alpha_probe, 0.0, 1e-15);
        if (std::abs(field_potential(g, r) - w) > 1e-8 * std::max(1.0, w))
            throw BranchError("potential inversion failed");
        return r;
    };

    double minv = kInf, maxv = -kInf;
    bool strict_near_zero = false;
    int n = std::max(grid.nx, 64);
    std::vector<double> ws = log_biased_grid(w_end, n);
    for (double w : ws) {
        double xp = invert(w, true);
        double xm = invert(w, false);
        double h = F.eval(xm) - F.eval(xp);
        minv = std::min(minv, h);
        maxv = std::max(maxv, h);
        if (w < ws[static_cast<std::size_t>(n / 8)] && std::abs(h) > detail::kSignTol)
            strict_near_zero = true;
    }

    ConditionRecord one_signed;
    one_signed.id = "H-one-signed";
    one_signed.sampled = true;
    if (maxv > detail::kSignTol && minv < -detail::kSignTol) one_signed.status = ConditionStatus::Violated;
    else if (maxv > detail::kSignTol || minv < -detail::kSignTol) {
        one_signed.status = ConditionStatus::Holds;
        one_signed.sign = maxv > detail::kSignTol ? 1 : -1;
    } else {
        one_signed.status = ConditionStatus::HoldsWithEqualityEverywhere;
    }
    rep.conditions.push_back(one_signed);

    ConditionRecord strict;
    strict.id = "H-strict-sequence-near-0";
    strict.sampled = true;
    strict.status = strict_near_zero ? ConditionStatus::Holds : ConditionStatus::Undecided;
    rep.conditions.push_back(strict);

    bool ok = one_signed.status == ConditionStatus::Holds && strict_near_zero;
    rep.verdict = ok ? Verdict::NoClosedOrbits : Verdict::Inconclusive;
    return rep;
}

}  // namespace phase_sentinel
