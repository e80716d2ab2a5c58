#pragma once

#include <array>
#include <climits>
#include <string>

#include "phase_sentinel/compactify/chart.hpp"
#include "phase_sentinel/core/errors.hpp"
#include "phase_sentinel/core/poly.hpp"

namespace phase_sentinel {

enum class BlowupDirection {
    ZOverU,  // z = z~ u : resolves directions transverse to the u-axis
    UOverZ,  // u = u~ z : resolves directions transverse to the z-axis
};

struct BlownUpSystem {
    Poly2 d_first;   // derivative of the surviving variable
    Poly2 d_second;  // derivative of the blow-up ratio (or of z for UOverZ)
    BlowupDirection direction;
    int rescale_power = 0;            // d delta = u^s d tau (or z^s)
    std::array<int, 4> quadrant_map;  // image quadrant of quadrants 1..4
    int depth = 1;
};

namespace detail {

inline Poly2 subst_z_by_ratio(const Poly2& p) {
    // z -> z~ u : u^i z^j becomes u^(i+j) z~^j
    Poly2 out;
    for (const auto& [ij, v] : p.m) out.add_term(ij.first + ij.second, ij.second, v);
    return out;
}

inline Poly2 subst_u_by_ratio(const Poly2& p) {
    // u -> u~ z : u^i z^j becomes u~^i z^(i+j)
    Poly2 out;
    for (const auto& [ij, v] : p.m) out.add_term(ij.first, ij.first + ij.second, v);
    return out;
}

inline int min_degree(const Poly2& p, bool in_first) {
    int d = INT_MAX;
    for (const auto& [ij, v] : p.m) d = std::min(d, in_first ? ij.first : ij.second);
    return p.m.empty() ? 0 : d;
}

inline Poly2 divide_exact(const Poly2& p, int k, bool in_first) {
    Poly2 out;
    for (const auto& [ij, v] : p.m) {
        int i = ij.first - (in_first ? k : 0);
        int j = ij.second - (in_first ? 0 : k);
        if (i < 0 || j < 0) throw UnhandledCase("blow-up division is not exact");
        out.add_term(i, j, v);
    }
    return out;
}

}  // namespace detail

/// Directional blow-up with the natural time rescale: substitute, apply the
/// chain rule, then divide out the largest common power of the blow-up
/// variable so the result is again polynomial.  The covered classification
/// tables chain at most three of these; deeper chains are refused.
inline BlownUpSystem briot_bouquet(const Poly2& P, const Poly2& Q, BlowupDirection dir, int depth = 1) {
    if (depth > 3) throw UnhandledCase("blow-up chains deeper than 3 are outside the covered constructions");
    for (const auto& [ij, v] : P.m)
        if (ij.first + ij.second == 0) throw UnhandledCase("blow-up requires a field vanishing at the origin");
    for (const auto& [ij, v] : Q.m)
        if (ij.first + ij.second == 0) throw UnhandledCase("blow-up requires a field vanishing at the origin");

    BlownUpSystem out;
    out.direction = dir;
    out.depth = depth;
    if (dir == BlowupDirection::ZOverU) {
        // z~ = z/u : d z~/dtau = (Q - z~ P) / u, then rescale by u^s
        Poly2 A = detail::subst_z_by_ratio(P);
        Poly2 B = detail::subst_z_by_ratio(Q) - Poly2::monomial(0, 1, 1.0) * detail::subst_z_by_ratio(P);
        B = detail::divide_exact(B, 1, true);
        int s = std::min(detail::min_degree(A, true), detail::min_degree(B, true));
        out.rescale_power = s;
        out.d_first = detail::divide_exact(A, s, true);
        out.d_second = detail::divide_exact(B, s, true);
        // (u,z) quadrants map to (u, z/u) quadrants: 1->1, 2->3, 3->2, 4->4
        out.quadrant_map = {1, 3, 2, 4};
        return out;
    }
    // u~ = u/z : d u~/dtau = (P - u~ Q) / z, then rescale by z^s
    Poly2 B = detail::subst_u_by_ratio(Q);
    Poly2 A = detail::subst_u_by_ratio(P) - Poly2::monomial(1, 0, 1.0) * detail::subst_u_by_ratio(Q);
    A = detail::divide_exact(A, 1, false);
    int s = std::min(detail::min_degree(A, false), detail::min_degree(B, false));
    out.rescale_power = s;
    out.d_first = detail::divide_exact(A, s, false);
    out.d_second = detail::divide_exact(B, s, false);
    // (u,z) quadrants map to (u/z, z) quadrants: 1->1, 2->2, 3->4, 4->3
    out.quadrant_map = {1, 2, 4, 3};
    return out;
}

inline BlownUpSystem briot_bouquet(const ChartSystem& cs, BlowupDirection dir) {
    return briot_bouquet(cs.d_first, cs.d_second, dir, cs.blowup_depth + 1);
}

}  // namespace phase_sentinel
