#pragma once

#include <climits>
#include <cmath>
#include <string>
#include <vector>

#include "phase_sentinel/compactify/chart.hpp"
#include "phase_sentinel/compactify/phi.hpp"
#include "phase_sentinel/core/errors.hpp"
#include "phase_sentinel/equilibrium/nilpotent.hpp"

namespace phase_sentinel {

struct InfinityEquilibrium {
    Chart chart = Chart::U;
    double position = 0.0;  // u (chart U) or v (chart V); z = 0
    std::string label;      // naming from the classification tables
};

struct DirectionOrbit {
    double angle = 0.0;
    bool infinitely_many = false;
    int time_sense = 0;  // +1: approached as tau -> +inf; -1: as tau -> -inf
};

/// Polar profile of the leading homogeneous part: with u = r cos, z = r sin,
/// the radial equation is (1/r) dr/dtheta = H/G with
///   G(theta) = cos Q_m - sin P_m,   H(theta) = cos P_m + sin Q_m,
/// taken on the lowest joint degree m.  The normal-sector argument behind
/// the direction tables needs the first nonvanishing derivative of G times H
/// to be nonzero at the on-axis roots.
struct PolarLeading {
    Poly2 pm, qm;
    int degree = 0;

    double G(double theta) const {
        double c = std::cos(theta), s = std::sin(theta);
        return c * qm.eval(c, s) - s * pm.eval(c, s);
    }
    double H(double theta) const {
        double c = std::cos(theta), s = std::sin(theta);
        return c * pm.eval(c, s) + s * qm.eval(c, s);
    }
};

inline PolarLeading polar_leading(const Poly2& P, const Poly2& Q) {
    int m = INT_MAX;
    for (const auto& [ij, v] : P.m) m = std::min(m, ij.first + ij.second);
    for (const auto& [ij, v] : Q.m) m = std::min(m, ij.first + ij.second);
    PolarLeading out;
    out.degree = m;
    out.pm = P.degree_slice(m, m);
    out.qm = Q.degree_slice(m, m);
    return out;
}

/// Value of G^(k)(theta0) H(theta0) for the first k in {1,3} with a
/// nonvanishing derivative; the tables rely on this being nonzero.
inline double polar_generic_check(const PolarLeading& pl, double theta0) {
    const double h = 1e-4;
    double g1 = (pl.G(theta0 + h) - pl.G(theta0 - h)) / (2.0 * h);
    double scale = std::abs(pl.G(theta0 + 0.5)) + std::abs(pl.H(theta0)) + 1.0;
    if (std::abs(g1) > 1e-6 * scale) return g1 * pl.H(theta0);
    double g3 = (pl.G(theta0 + 2.0 * h) - 2.0 * pl.G(theta0 + h) + 2.0 * pl.G(theta0 - h) -
                 pl.G(theta0 - 2.0 * h)) /
                (2.0 * h * h * h);
    if (std::abs(g3) > 1e-4 * scale) return g3 * pl.H(theta0);
    throw UnhandledCase("polar profile is degenerate beyond the covered multiplicities");
}

/// Outcome of classifying one equilibrium at infinity: either a plain kind
/// (hyperbolic/semi-hyperbolic cases) or a table of exceptional directions
/// for the degenerate ones.
struct InfinityClass {
    EquilibriumKind kind = EquilibriumKind::Degenerate;
    bool star = false;        // equal-eigenvalue node
    bool degenerate = false;  // classified through a direction table
    std::vector<DirectionOrbit> directions;
    std::string table;  // which published case applied
    // first-nonvanishing-derivative check values G^(k) H at theta = 0 and pi
    std::vector<std::pair<double, double>> generic_checks;
};

namespace detail {

inline bool near(double v, double w, double scale = 1.0) {
    return std::abs(v - w) <= 1e-12 * std::max(1.0, std::abs(scale));
}

}  // namespace detail

/// Equilibria on the equator: chart-U positions are the zeros of the
/// boundary polynomial (plus u = 0 itself for the quadratic family); chart V
/// always contributes the vertical-direction pair D.
inline std::vector<InfinityEquilibrium> infinity_equilibria(const CubicParams& p) {
    std::vector<InfinityEquilibrium> out;
    double a = p.a, b = p.b, c = p.c;
    if (p.family == Family::sys61) {
        PhiAnalysis phi = phi_analysis(a, b, c);
        if (c > 0.0) {
            double s3 = std::sqrt(3.0 * a * c);
            if (b >= -s3 && b <= s3) {
                out.push_back({Chart::U, phi.roots.at(0), "E"});
            } else {
                double phi_r1 = phi.data.phi_rho1.value();
                double phi_r2 = phi.data.phi_rho2.value();
                auto is_zero = [&](double v, double rho) {
                    return std::abs(v) <= 1e-12 * (std::abs(c * rho * rho * rho) +
                                                   std::abs(b * rho * rho) + std::abs(a * rho) + 1.0);
                };
                if (b < -s3) {
                    if (is_zero(phi_r2, phi.data.rho2.value())) {
                        // double root at rho2: the simple root is the other one
                        for (double r : phi.roots)
                            if (!detail::near(r, phi.data.rho2.value(), r))
                                out.push_back({Chart::U, r, "F"});
                        out.push_back({Chart::U, phi.data.rho2.value(), "Q"});
                    } else if (phi_r2 > 0.0) {
                        out.push_back({Chart::U, phi.roots.at(0), "E"});
                    } else {
                        out.push_back({Chart::U, phi.roots.at(0), "F1"});
                        out.push_back({Chart::U, phi.roots.at(1), "F2"});
                        out.push_back({Chart::U, phi.roots.at(2), "F3"});
                    }
                } else {  // b > s3
                    if (is_zero(phi_r1, phi.data.rho1.value())) {
                        out.push_back({Chart::U, phi.data.rho1.value(), "K"});
                        for (double r : phi.roots)
                            if (!detail::near(r, phi.data.rho1.value(), r))
                                out.push_back({Chart::U, r, "F"});
                    } else if (phi_r1 < 0.0) {
                        out.push_back({Chart::U, phi.roots.at(0), "E"});
                    } else if (is_zero(phi_r2, phi.data.rho2.value())) {
                        for (double r : phi.roots)
                            if (!detail::near(r, phi.data.rho2.value(), r))
                                out.push_back({Chart::U, r, "F"});
                        out.push_back({Chart::U, phi.data.rho2.value(), "Q"});
                    } else if (phi_r2 > 0.0) {
                        out.push_back({Chart::U, phi.roots.at(0), "E"});
                    } else {
                        out.push_back({Chart::U, phi.roots.at(0), "F1"});
                        out.push_back({Chart::U, phi.roots.at(1), "F2"});
                        out.push_back({Chart::U, phi.roots.at(2), "F3"});
                    }
                }
            }
        } else {
            // c = 0: quadratic boundary polynomial b u^2 + a u + 1
            double disc = a * a - 4.0 * b;
            double scale = a * a + 4.0 * std::abs(b);
            if (disc > 1e-12 * std::max(1.0, scale)) {
                out.push_back({Chart::U, (-a - std::sqrt(disc)) / (2.0 * b), "A"});
                out.push_back({Chart::U, (-a + std::sqrt(disc)) / (2.0 * b), "B"});
            } else if (disc >= -1e-12 * std::max(1.0, scale)) {
                out.push_back({Chart::U, -a / (2.0 * b), "C"});
            }
        }
        out.push_back({Chart::V, 0.0, "D"});
        return out;
    }
    if (p.family == Family::sys71) {
        out.push_back({Chart::U, 0.0, "G"});
        if (c == 0.0) {
            if (a > 0.0) out.push_back({Chart::U, -a / b, "R"});
        } else if (a == 0.0) {
            out.push_back({Chart::U, -b / c, "S"});
        } else {
            double disc = b * b - 4.0 * a * c;
            double scale = b * b + 4.0 * a * c;
            if (disc > 1e-12 * std::max(1.0, scale)) {
                out.push_back({Chart::U, (-b + std::sqrt(disc)) / (2.0 * c), "P1"});
                out.push_back({Chart::U, (-b - std::sqrt(disc)) / (2.0 * c), "P2"});
            } else if (disc >= -1e-12 * std::max(1.0, scale)) {
                out.push_back({Chart::U, -b / (2.0 * c), "T"});
            }
        }
        out.push_back({Chart::V, 0.0, "D"});
        return out;
    }
    throw UnhandledCase("infinity_equilibria covers the sys61/sys71 families only");
}

namespace detail {

// semi-hyperbolic chart-U equilibrium: Jacobian diag(lambda1, 0) with the
// hyperbolic direction along u; reduce to the unit normal form, solve the
// jet, classify, and undo the time orientation if lambda1 < 0
inline EquilibriumKind classify_semi_hyperbolic_chart(const ChartSystem& cs, double u_star) {
    // polish the root of the on-axis profile so the shift is exact to
    // machine precision (positions arrive from bisection)
    for (int it = 0; it < 3; ++it) {
        double f = cs.d_first.eval(u_star, 0.0);
        double df = cs.d_first.dx().eval(u_star, 0.0);
        if (df == 0.0) break;
        u_star -= f / df;
    }
    Poly2 P = cs.d_first.shifted(u_star, 0.0);
    Poly2 Q = cs.d_second.shifted(u_star, 0.0);
    double coeff_scale = 1.0;
    for (const auto& [ij, v] : P.m) coeff_scale = std::max(coeff_scale, std::abs(v));
    for (const auto& [ij, v] : Q.m) coeff_scale = std::max(coeff_scale, std::abs(v));
    double dust = 1e-9 * coeff_scale;

    double lambda1 = P.coeff(1, 0);
    if (std::abs(lambda1) < 1e-10 * coeff_scale)
        throw UnhandledCase("equilibrium is not semi-hyperbolic");
    if (std::abs(P.coeff(0, 1)) > dust || std::abs(Q.coeff(1, 0)) > dust ||
        std::abs(Q.coeff(0, 1)) > dust || std::abs(P.coeff(0, 0)) > dust ||
        std::abs(Q.coeff(0, 0)) > dust)
        throw UnhandledCase("unexpected linear structure at a chart equilibrium");

    // roles for the normal form: x := z (center), y := u (hyperbolic);
    // shift residue below the dust threshold is discarded
    Poly2 P2, Q2;
    for (const auto& [ij, v] : Q.m) {
        if (ij.first + ij.second <= 1) continue;
        P2.add_term(ij.second, ij.first, v / lambda1);
    }
    for (const auto& [ij, v] : P.m) {
        if (ij.first + ij.second <= 1) continue;
        Q2.add_term(ij.second, ij.first, v / lambda1);
    }
    JetSolveResult jet = jet_solve_phi(P2, Q2);
    EquilibriumKind kind = semi_hyperbolic_classify(jet.a_m, jet.m);
    if (lambda1 < 0.0) {
        if (kind == EquilibriumKind::UnstableNode) kind = EquilibriumKind::StableNode;
        else if (kind == EquilibriumKind::StableNode) kind = EquilibriumKind::UnstableNode;
        // saddles and saddle-nodes keep their type under time reversal
    }
    return kind;
}

inline DirectionOrbit one(double angle, int sense) { return {angle, false, sense}; }
inline DirectionOrbit fan(double angle, int sense) { return {angle, true, sense}; }

// attach the on-axis generic-check values to a table-classified equilibrium
inline void attach_generic_checks(InfinityClass& cls, const CubicParams& p, Chart chart, double pos) {
    ChartSystem cs = chart_transform(p, chart);
    Poly2 P = cs.d_first.shifted(pos, 0.0);
    Poly2 Q = cs.d_second.shifted(pos, 0.0);
    double coeff_scale = 1.0;
    for (const auto& [ij, v] : P.m) coeff_scale = std::max(coeff_scale, std::abs(v));
    for (const auto& [ij, v] : Q.m) coeff_scale = std::max(coeff_scale, std::abs(v));
    Poly2 Pc, Qc;  // drop shift dust so the leading degree is genuine
    for (const auto& [ij, v] : P.m)
        if (std::abs(v) > 1e-9 * coeff_scale) Pc.add_term(ij.first, ij.second, v);
    for (const auto& [ij, v] : Q.m)
        if (std::abs(v) > 1e-9 * coeff_scale) Qc.add_term(ij.first, ij.second, v);
    PolarLeading pl = polar_leading(Pc, Qc);
    cls.generic_checks = {{0.0, polar_generic_check(pl, 0.0)}, {M_PI, polar_generic_check(pl, M_PI)}};
}

}  // namespace detail

/// Classify one equilibrium at infinity: semi-hyperbolic cases through the
/// jet reduction, degenerate cases through the published direction tables
/// selected by the sign conditions.
inline InfinityClass classify_infinity(const InfinityEquilibrium& eq, const CubicParams& p) {
    using detail::fan;
    using detail::one;
    InfinityClass out;
    double a = p.a, b = p.b, c = p.c, mu = p.mu, lambda = p.lambda;

    if (eq.chart == Chart::V) {
        // vertical pair D
        if (c > 0.0) {
            out.kind = EquilibriumKind::UnstableNode;
            out.star = true;
            out.table = "star";
            return out;
        }
        out.degenerate = true;
        out.kind = EquilibriumKind::Degenerate;
        if (b > 0.0) {
            out.table = "D1";
            out.directions = {one(0.0, -1), one(M_PI, +1)};
        } else {
            out.table = "D2";
            out.directions = {fan(0.0, +1), fan(M_PI, -1)};
        }
        detail::attach_generic_checks(out, p, Chart::V, 0.0);
        return out;
    }

    ChartSystem cu = chart_transform(p, Chart::U);

    if (p.family == Family::sys61) {
        if (eq.label == "C") {
            double u0 = -a / (2.0 * b);
            double gamma = u0 * u0 + mu * u0 + lambda;
            out.degenerate = true;
            out.kind = EquilibriumKind::Degenerate;
            if (gamma > 0.0) {
                out.table = "C1";
                out.directions = {one(0.0, +1), one(M_PI, -1)};
            } else if (gamma == 0.0) {
                out.table = "C2";
                out.directions = {one(0.0, +1), fan(M_PI / 2, -1), one(M_PI, -1), fan(3 * M_PI / 2, -1)};
            } else {
                out.table = "C3";
                double w = std::atan(std::sqrt(-b / gamma));
                out.directions = {one(0.0, +1),          one(w, -1), fan(M_PI - w, -1),
                                  one(M_PI, -1), fan(M_PI + w, -1), one(2 * M_PI - w, -1)};
            }
            detail::attach_generic_checks(out, p, Chart::U, u0);
            return out;
        }
        if (eq.label == "K" || eq.label == "Q") {
            double rho = eq.position;
            double s = rho * rho + mu * rho + lambda;
            double root = std::sqrt(std::max(0.0, b * b - 3.0 * a * c));
            out.degenerate = true;
            out.kind = EquilibriumKind::Degenerate;
            if (eq.label == "K") {
                if (s < 0.0) {
                    out.table = "K1";
                    out.directions = {one(0.0, -1), one(M_PI, +1)};
                } else if (s == 0.0) {
                    out.table = "K2";
                    out.directions = {one(0.0, -1), fan(M_PI / 2, -1), one(M_PI, +1), fan(3 * M_PI / 2, -1)};
                } else {
                    out.table = "K3";
                    double w = std::atan(std::sqrt(root / s));
                    out.directions = {one(0.0, -1),          one(w, +1), fan(M_PI - w, +1),
                                      one(M_PI, +1), fan(M_PI + w, +1), one(2 * M_PI - w, +1)};
                }
            } else {
                if (s > 0.0) {
                    out.table = "Q1";
                    out.directions = {one(0.0, +1), one(M_PI, -1)};
                } else if (s == 0.0) {
                    out.table = "Q2";
                    out.directions = {one(0.0, +1), fan(M_PI / 2, -1), one(M_PI, -1), fan(3 * M_PI / 2, -1)};
                } else {
                    out.table = "Q3";
                    double w = std::atan(std::sqrt(-root / s));
                    out.directions = {one(0.0, +1),          one(w, -1), fan(M_PI - w, -1),
                                      one(M_PI, -1), fan(M_PI + w, -1), one(2 * M_PI - w, -1)};
                }
            }
            detail::attach_generic_checks(out, p, Chart::U, rho);
            return out;
        }
        // A, B, E, F, F1, F2, F3: semi-hyperbolic unless the boundary
        // polynomial has a near-triple root (then a degenerate saddle)
        Poly1 phi = phi_poly(a, b, c);
        double dphi = phi.derivative().eval(eq.position);
        double scale = 3.0 * std::abs(c * eq.position * eq.position) + 2.0 * std::abs(b * eq.position) + std::abs(a);
        if (std::abs(dphi) <= 1e-10 * std::max(1.0, scale)) {
            out.kind = EquilibriumKind::Saddle;
            out.degenerate = true;
            out.table = "degenerate-boundary-saddle";
            return out;
        }
        out.kind = detail::classify_semi_hyperbolic_chart(cu, eq.position);
        return out;
    }

    // sys71
    if (eq.label == "G") {
        if (a > 0.0) {
            out.kind = detail::classify_semi_hyperbolic_chart(cu, 0.0);
            return out;
        }
        out.degenerate = true;
        out.kind = EquilibriumKind::Degenerate;
        if (b > 0.0) {
            out.table = "G3";
            out.directions = {one(0.0, +1), one(M_PI, -1)};
        } else {
            out.table = "G2";
            double w = std::atan(std::sqrt(-b));
            out.directions = {one(0.0, -1),          one(w, +1), one(M_PI - w, -1),
                              one(M_PI, +1), one(M_PI + w, -1), one(2 * M_PI - w, +1)};
        }
        detail::attach_generic_checks(out, p, Chart::U, 0.0);
        return out;
    }
    if (eq.label == "T") {
        out.degenerate = true;
        out.kind = EquilibriumKind::Degenerate;
        double e = a - mu * std::sqrt(a * c) + c;
        if (b < 0.0) {  // b = -2 sqrt(ac)
            out.table = "T1";
            out.directions = {one(0.0, +1), one(M_PI, -1)};
        } else if (e < 0.0) {
            out.table = "T1";
            out.directions = {one(0.0, -1), one(M_PI, +1)};
        } else if (e == 0.0) {
            out.table = "T2";
            out.directions = {one(0.0, +1), fan(M_PI / 2, -1), one(M_PI, -1), fan(3 * M_PI / 2, -1)};
        } else {
            out.table = "T3";
            double w = std::atan(std::sqrt(c * std::sqrt(a * c) / e));
            out.directions = {one(0.0, -1),          fan(w, -1), one(M_PI - w, -1),
                              one(M_PI, +1), one(M_PI + w, -1), fan(2 * M_PI - w, -1)};
        }
        detail::attach_generic_checks(out, p, Chart::U, eq.position);
        return out;
    }
    // R, S, P1, P2
    out.kind = detail::classify_semi_hyperbolic_chart(cu, eq.position);
    return out;
}

}  // namespace phase_sentinel
