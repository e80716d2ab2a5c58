#pragma once

#include <cmath>
#include <random>

#include "phase_sentinel/core/errors.hpp"
#include "phase_sentinel/core/poly.hpp"
#include "phase_sentinel/core/system.hpp"

namespace phase_sentinel {

enum class Chart { U, V };  // U: x = 1/z, y = u/z;  V: x = v/z, y = 1/z

/// Polynomial vector field of the compactified system in one chart, with the
/// time scale d tau = dt / z^2 already absorbed.
struct ChartSystem {
    Family family = Family::sys61;
    Chart chart = Chart::U;
    CubicParams params;
    Poly2 d_first;   // du/dtau (chart U) or dv/dtau (chart V); variables (u, z) or (v, z)
    Poly2 d_second;  // dz/dtau
    int blowup_depth = 0;

    Velocity eval(double first, double z) const {
        return {d_first.eval(first, z), d_second.eval(first, z)};
    }
};

/// Field adapter so chart systems integrate with the shared machinery.
struct ChartField {
    const ChartSystem* cs;
    Velocity operator()(double a, double b) const { return cs->eval(a, b); }
};

/// Compactified chart systems of the cubic family, written out exactly.
inline ChartSystem chart_transform(const CubicParams& p, Chart chart) {
    ChartSystem out;
    out.family = p.family;
    out.chart = chart;
    out.params = p;
    double lambda = p.lambda, mu = p.mu, a = p.a, b = p.b, c = p.c;
    if (p.family == Family::sys61) {
        if (chart == Chart::U) {
            // du = -z^2 (u^2 + mu u + lambda) - (c u^3 + b u^2 + a u + 1), dz = -z^3 u
            out.d_first.add_term(2, 2, -1.0);
            out.d_first.add_term(1, 2, -mu);
            out.d_first.add_term(0, 2, -lambda);
            out.d_first.add_term(3, 0, -c);
            out.d_first.add_term(2, 0, -b);
            out.d_first.add_term(1, 0, -a);
            out.d_first.add_term(0, 0, -1.0);
            out.d_second.add_term(1, 3, -1.0);
        } else {
            // dv = z^2 (lambda v^2 + mu v + 1) + v (v^3 + a v^2 + b v + c)
            // dz = z^3 (lambda v + mu) + z (v^3 + a v^2 + b v + c)
            out.d_first.add_term(2, 2, lambda);
            out.d_first.add_term(1, 2, mu);
            out.d_first.add_term(0, 2, 1.0);
            out.d_first.add_term(4, 0, 1.0);
            out.d_first.add_term(3, 0, a);
            out.d_first.add_term(2, 0, b);
            out.d_first.add_term(1, 0, c);
            out.d_second.add_term(1, 3, lambda);
            out.d_second.add_term(0, 3, mu);
            out.d_second.add_term(3, 1, 1.0);
            out.d_second.add_term(2, 1, a);
            out.d_second.add_term(1, 1, b);
            out.d_second.add_term(0, 1, c);
        }
        return out;
    }
    if (p.family == Family::sys71) {
        if (chart == Chart::U) {
            // du = -z^2 (u^2 + mu u + 1) - u (c u^2 + b u + a), dz = -z^3 u
            out.d_first.add_term(2, 2, -1.0);
            out.d_first.add_term(1, 2, -mu);
            out.d_first.add_term(0, 2, -1.0);
            out.d_first.add_term(3, 0, -c);
            out.d_first.add_term(2, 0, -b);
            out.d_first.add_term(1, 0, -a);
            out.d_second.add_term(1, 3, -1.0);
        } else {
            // dv = z^2 (v^2 + mu v + 1) + v (a v^2 + b v + c)
            // dz = z^3 (v + mu) + z (a v^2 + b v + c)
            out.d_first.add_term(2, 2, 1.0);
            out.d_first.add_term(1, 2, mu);
            out.d_first.add_term(0, 2, 1.0);
            out.d_first.add_term(3, 0, a);
            out.d_first.add_term(2, 0, b);
            out.d_first.add_term(1, 0, c);
            out.d_second.add_term(1, 3, 1.0);
            out.d_second.add_term(0, 3, mu);
            out.d_second.add_term(2, 1, a);
            out.d_second.add_term(1, 1, b);
            out.d_second.add_term(0, 1, c);
        }
        return out;
    }
    throw UnhandledCase("chart_transform covers the sys61/sys71 families only");
}

/// Push the plane field through the chart differential at sampled points and
/// compare with the chart formulas; returns the max relative defect.
inline double verify_chart_consistency(const CubicParams& p, int n_points, unsigned seed = 1234) {
    PlanarSystem plane = to_system(p);
    ChartSystem cu = chart_transform(p, Chart::U);
    ChartSystem cv = chart_transform(p, Chart::V);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mag(0.5, 2.0);
    std::uniform_int_distribution<int> sign(0, 1);

    double worst = 0.0;
    auto update = [&](double formula, double pushed) {
        double scale = std::max({1.0, std::abs(formula), std::abs(pushed)});
        worst = std::max(worst, std::abs(formula - pushed) / scale);
    };
    for (int i = 0; i < n_points; ++i) {
        double x = mag(rng) * (sign(rng) ? 1.0 : -1.0);
        double y = mag(rng) * (sign(rng) ? 1.0 : -1.0);
        Velocity v = plane.eval(x, y);
        {
            // chart U: u = y/x, z = 1/x, d/dtau = z^2 d/dt
            double z = 1.0 / x, u = y / x;
            double du_dt = z * v.vy - u * z * v.vx;
            double dz_dt = -z * z * v.vx;
            Velocity w = cu.eval(u, z);
            update(w.vx, z * z * du_dt);
            update(w.vy, z * z * dz_dt);
        }
        {
            // chart V: v = x/y, z = 1/y
            double z = 1.0 / y, vv = x / y;
            double dv_dt = z * v.vx - vv * z * v.vy;
            double dz_dt = -z * z * v.vy;
            Velocity w = cv.eval(vv, z);
            update(w.vx, z * z * dv_dt);
            update(w.vy, z * z * dz_dt);
        }
    }
    return worst;
}

}  // namespace phase_sentinel
