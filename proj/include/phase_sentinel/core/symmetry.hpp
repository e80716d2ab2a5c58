#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "phase_sentinel/core/system.hpp"

namespace phase_sentinel {

/// Log-biased grid on (0, hi), denser toward 0.
inline std::vector<double> log_biased_grid(double hi, int n) {
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(n));
    double lo = std::min(1e-6, hi * 1e-6);
    for (int i = 0; i < n; ++i) {
        double s = static_cast<double>(i + 1) / n;
        xs.push_back(lo * std::pow(hi / lo, s));
    }
    return xs;
}

/// Half-width of the symmetric core |x| < min(-alpha, beta), capped for
/// infinite strips.
inline double symmetric_core(const PlanarSystem& sys, double cap = 10.0) {
    return std::min({-sys.alpha, sys.beta, cap});
}

/// Exact for polynomial g, sampled otherwise.
inline bool g_is_odd(const PlanarSystem& sys, double tol = 1e-9) {
    if (const Poly1* p = sys.g.poly()) {
        for (int i = 0; i <= p->degree(); i += 2)
            if (p->coeff(i) != 0.0) return false;
        return true;
    }
    double core = symmetric_core(sys);
    for (double x : log_biased_grid(core * 0.999, 101)) {
        double v = sys.g.eval(x) + sys.g.eval(-x);
        if (std::abs(v) > tol * std::max(1.0, std::abs(sys.g.eval(x)))) return false;
    }
    return true;
}

/// Whether f(x,y) + f(-x,y) vanishes identically (exact for polynomials).
inline bool f_even_x_part_zero(const PlanarSystem& sys, double tol = 1e-9) {
    if (const Poly2* p = sys.f.poly()) {
        for (const auto& [ij, v] : p->m)
            if (ij.first % 2 == 0 && v != 0.0) return false;
        return true;
    }
    double core = symmetric_core(sys);
    for (double x : log_biased_grid(core * 0.999, 41))
        for (double y : {-3.0, -1.0, -0.1, 0.0, 0.1, 1.0, 3.0}) {
            double v = sys.f.eval(x, y) + sys.f.eval(-x, y);
            if (std::abs(v) > tol) return false;
        }
    return true;
}

/// The vector field is symmetric with respect to the y-axis exactly when g is
/// odd and the even-in-x part of f vanishes.
inline bool is_symmetric(const PlanarSystem& sys) {
    return g_is_odd(sys) && f_even_x_part_zero(sys);
}

}  // namespace phase_sentinel
