#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "phase_sentinel/core/poly.hpp"
#include "phase_sentinel/num/roots.hpp"

namespace phase_sentinel {

/// Data of the boundary polynomial Phi(u) = c u^3 + b u^2 + a u + 1, whose
/// zeros are the chart-U equilibria at infinity.
struct PhiData {
    double a = 0.0, b = 0.0, c = 0.0;
    std::optional<double> rho1, rho2;          // critical points, rho1 <= rho2
    std::optional<double> phi_rho1, phi_rho2;  // Phi at the critical points
};

struct PhiAnalysis {
    PhiData data;
    std::vector<double> roots;  // ascending; a double root appears once
};

inline Poly1 phi_poly(double a, double b, double c) { return Poly1{1.0, a, b, c}; }

namespace detail {

inline double phi_scale(double a, double b, double c, double u) {
    return std::abs(c) * std::abs(u * u * u) + std::abs(b) * u * u + std::abs(a) * std::abs(u) + 1.0;
}

}  // namespace detail

/// Critical points in closed form, then bisection on the monotone intervals.
inline PhiAnalysis phi_analysis(double a, double b, double c) {
    PhiAnalysis out;
    out.data.a = a;
    out.data.b = b;
    out.data.c = c;
    Poly1 phi = phi_poly(a, b, c);

    if (c > 0.0) {
        double disc = b * b - 3.0 * a * c;
        double bound = cauchy_root_bound(phi);
        auto f = [&phi](double u) { return phi.eval(u); };
        if (disc >= 0.0) {
            double root = std::sqrt(disc);
            double r1 = (-b - root) / (3.0 * c), r2 = (-b + root) / (3.0 * c);
            out.data.rho1 = r1;
            out.data.rho2 = r2;
            out.data.phi_rho1 = phi.eval(r1);
            out.data.phi_rho2 = phi.eval(r2);
        }
        if (disc > 0.0) {
            double r1 = *out.data.rho1, r2 = *out.data.rho2;
            double f1 = *out.data.phi_rho1, f2 = *out.data.phi_rho2;
            double tol1 = 1e-12 * detail::phi_scale(a, b, c, r1);
            double tol2 = 1e-12 * detail::phi_scale(a, b, c, r2);
            // increasing on (-inf, r1): Phi(-bound) < 0 always (c > 0)
            if (std::abs(f1) <= tol1) out.roots.push_back(r1);  // double root at the maximum
            else if (f1 > 0.0) out.roots.push_back(bisect(f, -bound, r1));
            // decreasing on (r1, r2)
            if (std::abs(f2) <= tol2) {
                if (std::abs(f1) > tol1 && f1 > 0.0) out.roots.push_back(r2);  // double root at the minimum
            } else if (f1 > tol1 && f2 < 0.0) {
                out.roots.push_back(bisect(f, r1, r2));
            }
            // increasing on (r2, +inf): Phi(bound) > 0 always
            if (f2 < -tol2) out.roots.push_back(bisect(f, r2, bound));
            return out;
        }
        // monotone cubic: unique root
        out.roots.push_back(bisect(f, -bound, bound));
        return out;
    }

    // degenerate cubic: quadratic, linear, or constant
    if (b != 0.0) {
        double disc = a * a - 4.0 * b;
        if (disc > 0.0) {
            double r = std::sqrt(disc);
            out.roots = {(-a - r) / (2.0 * b), (-a + r) / (2.0 * b)};
            std::sort(out.roots.begin(), out.roots.end());
        } else if (disc == 0.0) {
            out.roots = {-a / (2.0 * b)};
        }
        return out;
    }
    if (a != 0.0) out.roots = {-1.0 / a};
    return out;
}

}  // namespace phase_sentinel
