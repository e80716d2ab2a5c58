#pragma once

#include <cmath>
#include <optional>

#include "phase_sentinel/core/errors.hpp"
#include "phase_sentinel/core/poly.hpp"
#include "phase_sentinel/equilibrium/local.hpp"

namespace phase_sentinel {

struct JetSolveResult {
    Poly1 phi;       // y = phi(x) solving y + Q2(x, phi(x)) = 0
    Poly1 psi;       // P2(x, phi(x)) truncated
    double a_m = 0;  // leading coefficient of psi
    int m = 0;       // leading degree
};

/// Series inversion for the semi-hyperbolic reduction: the system must be in
/// the normal form x' = P2(x,y), y' = y + Q2(x,y) with P2, Q2 free of
/// constant and linear terms.
inline JetSolveResult jet_solve_phi(const Poly2& P2, const Poly2& Q2, int order = kDefaultSeriesOrder) {
    for (const auto& [ij, v] : Q2.m)
        if (ij.first + ij.second <= 1 && v != 0.0)
            throw Error("jet_solve_phi: Q2 must not carry constant or linear terms");
    for (const auto& [ij, v] : P2.m)
        if (ij.first + ij.second <= 1 && v != 0.0)
            throw Error("jet_solve_phi: P2 must not carry constant or linear terms");

    JetSolveResult out;
    Poly1 phi;  // starts at 0; each pass gains at least one order
    for (int pass = 0; pass <= order; ++pass) phi = (Q2.compose_y(phi, order)) * (-1.0);
    out.phi = phi;
    out.psi = P2.compose_y(phi, order);
    auto [am, m] = out.psi.leading_from(0, 1e-14);
    if (m < 0) throw OrderExhausted("psi vanishes to the requested order");
    out.a_m = am;
    out.m = m;
    return out;
}

/// Lyapunov classification of a semi-hyperbolic equilibrium from the leading
/// term of psi(x) = a_m x^m (normal form with hyperbolic eigenvalue +1).
inline EquilibriumKind semi_hyperbolic_classify(double a_m, int m) {
    if (m % 2 == 1) return a_m > 0.0 ? EquilibriumKind::UnstableNode : EquilibriumKind::Saddle;
    return EquilibriumKind::SaddleNode;
}

/// Nilpotent classification in the normal form
///   x' = y,  y' = a_k x^k (1+h) + b_n x^n y (1+g) + y^2 p(x,y),  k = 2m+1.
/// For the planar system x' = y, y' = -g - f y the coefficients enter with
/// flipped signs: a_k here is -a_k(g) and b_n here is -b_n(f).  For the
/// elliptic-plus-hyperbolic row the parabolic-sector count is genuinely
/// ambiguous without more structure, so the candidate set {0,1,2} is
/// attached.
inline EquilibriumClass andreev_classify(double a_2m1, int m, std::optional<double> b_n,
                                         std::optional<int> n_opt) {
    if (m < 1) throw Error("andreev_classify: k = 2m+1 requires m >= 1");
    if (a_2m1 == 0.0) throw Error("andreev_classify: a_{2m+1} must be nonzero");

    EquilibriumClass out;
    if (a_2m1 > 0.0) {
        out.kind = EquilibriumKind::Saddle;
        out.directions = {0.0, M_PI / 2.0, M_PI, 3.0 * M_PI / 2.0};
        return out;
    }
    double bn = b_n.value_or(0.0);
    if (bn == 0.0) {
        out.kind = EquilibriumKind::CenterOrFocus;
        return out;
    }
    int n = n_opt.value_or(0);
    double lambda = bn * bn + 4.0 * (m + 1) * a_2m1;
    if (n > m || (n == m && lambda < 0.0)) {
        out.kind = EquilibriumKind::CenterOrFocus;
        return out;
    }
    // n < m, or n = m with lambda >= 0
    if (n % 2 == 0) {
        // the reflection (x,y,t,b_n) -> (x,-y,-t,-b_n) swaps stability
        out.kind = bn < 0.0 ? EquilibriumKind::StableNode : EquilibriumKind::UnstableNode;
        return out;
    }
    out.kind = EquilibriumKind::Degenerate;
    out.sectors = SectorCounts{1, 1};
    out.directions = {0.0, M_PI};
    out.parabolic_candidates = {0, 1, 2};
    return out;
}

}  // namespace phase_sentinel
