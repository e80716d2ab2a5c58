#pragma once

#include <cmath>

#include "phase_sentinel/core/system.hpp"

namespace phase_sentinel {

/// C^2 radial bump: 1 on [0,1], 0 on [2,inf), quintic blend in between
/// (the cubic blend is only C^1; the quintic has vanishing first and second
/// derivatives at both ends).
inline double radial_bump(double r) {
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    double t = r - 1.0;
    return 1.0 - (10.0 * t * t * t - 15.0 * t * t * t * t + 6.0 * t * t * t * t * t);
}

/// x' = y, y' = -2x^3 - 4xy + eps bump(r) x^2 y, r^2 = x^2 + y^2.
inline PlanarSystem bump_cubic_system(double eps) {
    PlanarSystem s;
    Poly1 g;
    g.set_coeff(3, 2.0);
    s.g = ScalarField1D(g);
    if (eps == 0.0) {
        Poly2 f;
        f.add_term(1, 0, 4.0);
        s.f = ScalarField2D(f);
        return s;
    }
    Opaque2D f;
    f.fn = [eps](double x, double y) {
        return 4.0 * x - eps * radial_bump(std::hypot(x, y)) * x * x;
    };
    f.smooth = true;
    s.f = ScalarField2D(f);
    return s;
}

/// x' = y, y' = -2x^5 - xy (symmetric; one elliptic and one hyperbolic sector).
inline PlanarSystem symmetric_quintic_system() {
    PlanarSystem s;
    Poly1 g;
    g.set_coeff(5, 2.0);
    s.g = ScalarField1D(g);
    Poly2 f;
    f.add_term(1, 0, 1.0);
    s.f = ScalarField2D(f);
    return s;
}

/// x' = y, y' = -2x^5 + x^6 - xy (asymmetric; adds one parabolic sector).
inline PlanarSystem asymmetric_quintic_system() {
    PlanarSystem s;
    Poly1 g;
    g.set_coeff(5, 2.0);
    g.set_coeff(6, -1.0);
    s.g = ScalarField1D(g);
    Poly2 f;
    f.add_term(1, 0, 1.0);
    s.f = ScalarField2D(f);
    return s;
}

/// Cubic-restoring oscillator with quadratic drag in the first-order form:
/// g = k x^3, f = -x + x^2 (the F(x) = -x^2/2 + x^3/3 profile).
inline PlanarSystem cubic_restoring_system(double k) {
    PlanarSystem s;
    Poly1 g;
    g.set_coeff(3, k);
    s.g = ScalarField1D(g);
    Poly2 f;
    f.add_term(1, 0, -1.0);
    f.add_term(2, 0, 1.0);
    s.f = ScalarField2D(f);
    return s;
}

/// Piecewise-linear restoring profile with equilibria at 0 and +-1, damped by
/// f = -mu1 - mu2 x - x^2; hosts a small cycle around (1, 0) when
/// mu1 + mu2 + 1 is slightly negative while the origin stays cycle-free.
inline PlanarSystem sawtooth_system(double mu1, double mu2) {
    PlanarSystem s;
    PiecewiseLinear pw;
    pw.segments = {{-kInf, -0.5, 1.0, 1.0},
                   {-0.5, -0.25, -3.0, -1.0},
                   {-0.25, 0.25, 1.0, 0.0},
                   {0.25, 0.5, -3.0, 1.0},
                   {0.5, kInf, 1.0, -1.0}};
    s.g = ScalarField1D(pw);
    Poly2 f;
    f.add_term(0, 0, -mu1);
    f.add_term(1, 0, -mu2);
    f.add_term(2, 0, -1.0);
    s.f = ScalarField2D(f);
    return s;
}

}  // namespace phase_sentinel
