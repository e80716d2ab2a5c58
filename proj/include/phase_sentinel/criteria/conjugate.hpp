#pragma once

#include <cmath>
#include <functional>

#include "phase_sentinel/core/errors.hpp"
#include "phase_sentinel/core/system.hpp"
#include "phase_sentinel/num/roots.hpp"

namespace phase_sentinel {

/// Potential-matching map: x > 0 is paired with the x-hat < 0 of equal
/// potential G(x-hat) = G(x).
struct ConjugateMap {
    ScalarField1D g;
    double tolerance = 1e-10;
};

/// Find x-hat < 0 with G(x-hat) = G(x), by expanding a bracket on the
/// negative side and bisecting.  Requires the sign condition x g(x) > 0, so
/// G is strictly increasing away from the origin on both sides.
inline double conjugate_point(const ConjugateMap& cm, double x) {
    if (!(x > 0.0)) throw Error("conjugate_point expects x > 0");
    double target = field_potential(cm.g, x);
    double alpha = cm.g.alpha;

    // bracket on (alpha, 0): G increases toward alpha
    double lo = std::isfinite(alpha) ? alpha : -1.0;
    if (!std::isfinite(alpha)) {
        int guard = 0;
        while (field_potential(cm.g, lo) < target) {
            lo *= 2.0;
            if (++guard > 200) throw NoConjugate("G never reaches G(x) on the negative side");
        }
    } else {
        // open interval: approach the endpoint
        double probe = alpha + (0.0 - alpha) * 1e-9;
        if (field_potential(cm.g, probe) < target)
            throw NoConjugate("G(alpha+) is below G(x); no conjugate point exists");
        lo = probe;
    }

    auto h = [&](double s) { return field_potential(cm.g, s) - target; };
    double xhat = bisect(h, lo, 0.0, 1e-15);
    double val = field_potential(cm.g, xhat);
    if (std::abs(val - target) > cm.tolerance * std::max(1.0, std::abs(target)))
        throw NoConjugate("bisection failed to match the potential within tolerance");
    return xhat;
}

/// System produced by the potential-flattening change of variables
///   u = ((m+1) G(x))^(1/(m+1)) sgn(x),   dtau = g(x)/u^m dt,
/// which carries x' = y, y' = -g - f y to u' = y, y' = -u^m - F(u,y) y with
/// F(u,y) = f(x(u), y) u^m / g(x(u)).  The new restoring profile u^m is odd.
struct NormalizedSystem {
    PlanarSystem system;
    std::function<double(double)> x_of_u;  // inverse substitution
    double m = 1.0;
};

inline NormalizedSystem normalize_g(const PlanarSystem& sys, int p, int q, double h0) {
    if (p % 2 == 0 || q % 2 == 0) throw BadExponent("p and q must both be odd");
    double m = static_cast<double>(p) / q;
    if (m < 1.0) throw BadExponent("m = p/q must be at least 1");

    ScalarField1D g = sys.g;
    double alpha = sys.alpha, beta = sys.beta;

    auto x_of_u = [g, alpha, beta, m](double u) -> double {
        if (u == 0.0) return 0.0;
        double target = std::pow(std::abs(u), m + 1.0) / (m + 1.0);
        auto h = [&](double s) { return field_potential(g, s) - target; };
        if (u > 0.0) {
            double hi = std::isfinite(beta) ? beta - (beta)*1e-12 - 1e-300 : 1.0;
            if (!std::isfinite(beta)) {
                int guard = 0;
                while (field_potential(g, hi) < target) {
                    hi *= 2.0;
                    if (++guard > 200) throw NoConjugate("G does not reach the requested level on (0, beta)");
                }
            } else {
                hi = beta * (1.0 - 1e-12);
                if (field_potential(g, hi) < target)
                    throw NoConjugate("u outside the image of (0, beta)");
            }
            return bisect(h, 0.0, hi, 1e-15);
        }
        double lo = std::isfinite(alpha) ? alpha * (1.0 - 1e-12) : -1.0;
        if (!std::isfinite(alpha)) {
            int guard = 0;
            while (field_potential(g, lo) < target) {
                lo *= 2.0;
                if (++guard > 200) throw NoConjugate("G does not reach the requested level on (alpha, 0)");
            }
        } else if (field_potential(g, lo) < target) {
            throw NoConjugate("u outside the image of (alpha, 0)");
        }
        return bisect(h, lo, 0.0, 1e-15);
    };

    NormalizedSystem out;
    out.m = m;
    out.x_of_u = x_of_u;

    double u_alpha = -kInf, u_beta = kInf;
    if (std::isfinite(alpha))
        u_alpha = -std::pow((m + 1.0) * field_potential(g, alpha * (1.0 - 1e-12)), 1.0 / (m + 1.0));
    if (std::isfinite(beta))
        u_beta = std::pow((m + 1.0) * field_potential(g, beta * (1.0 - 1e-12)), 1.0 / (m + 1.0));

    // restoring profile u^m: polynomial when m is an odd integer
    if (q == 1) {
        Poly1 gp;
        gp.set_coeff(p, 1.0);
        out.system.g = ScalarField1D(gp, u_alpha, u_beta);
    } else {
        Opaque1D gu;
        gu.fn = [m](double u) { return std::copysign(std::pow(std::abs(u), m), u); };
        gu.smooth = true;
        out.system.g = ScalarField1D(gu, u_alpha, u_beta);
    }

    ScalarField2D f = sys.f;
    double scale0 = std::pow(h0, -1.0 / (m + 1.0));  // lim u^m / g(x(u)) as u -> 0
    Opaque2D fu;
    fu.fn = [f, g, x_of_u, m, scale0](double u, double y) -> double {
        double x = x_of_u(u);
        if (std::abs(u) < 1e-9) return f.eval(x, y) * scale0;
        double um = std::copysign(std::pow(std::abs(u), m), u);
        return f.eval(x, y) * um / g.eval(x);
    };
    fu.smooth = true;
    out.system.f = ScalarField2D(fu);
    out.system.alpha = u_alpha;
    out.system.beta = u_beta;
    return out;
}

}  // namespace phase_sentinel
