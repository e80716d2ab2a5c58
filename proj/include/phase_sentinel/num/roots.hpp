#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "phase_sentinel/core/poly.hpp"

namespace phase_sentinel {

/// Bisect f on [lo, hi] assuming f(lo) and f(hi) have opposite signs.
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double xtol = 1e-14, int max_iter = 200) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    for (int i = 0; i < max_iter && (hi - lo) > xtol * std::max(1.0, std::abs(lo) + std::abs(hi)); ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    return 0.5 * (lo + hi);
}

/// Upper bound on |roots| of p (Cauchy bound).
inline double cauchy_root_bound(const Poly1& p) {
    int d = p.degree();
    if (d <= 0) return 1.0;
    double lead = std::abs(p.coeff(d));
    double m = 0.0;
    for (int i = 0; i < d; ++i) m = std::max(m, std::abs(p.coeff(i)));
    return 1.0 + m / lead;
}

namespace detail {

// real roots by recursive monotone splitting: the roots of p' cut the interval
// into monotone pieces, each holding at most one sign change
inline void poly_roots_rec(const Poly1& p, double lo, double hi, std::vector<double>& out) {
    int d = p.degree();
    if (d <= 0) return;
    if (d == 1) {
        double r = -p.coeff(0) / p.coeff(1);
        if (r >= lo && r <= hi) out.push_back(r);
        return;
    }
    std::vector<double> crit;
    poly_roots_rec(p.derivative(), lo, hi, crit);
    std::sort(crit.begin(), crit.end());
    std::vector<double> knots;
    knots.push_back(lo);
    for (double c : crit)
        if (c > knots.back()) knots.push_back(c);
    if (hi > knots.back()) knots.push_back(hi);
    auto f = [&p](double x) { return p.eval(x); };
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        double a = knots[i], b = knots[i + 1];
        double fa = p.eval(a), fb = p.eval(b);
        if (fa == 0.0 && (out.empty() || out.back() != a)) out.push_back(a);
        if (fa * fb < 0.0) out.push_back(bisect(f, a, b));
    }
    double fend = p.eval(knots.back());
    if (fend == 0.0 && (out.empty() || out.back() != knots.back())) out.push_back(knots.back());
}

}  // namespace detail

/// All real roots of p in [lo, hi], ascending.  Multiple roots of even order
/// are found only if an interval endpoint lands on them (they do not change
/// sign); callers that care about double roots locate them via p'.
inline std::vector<double> poly_real_roots(const Poly1& p, double lo, double hi) {
    std::vector<double> out;
    detail::poly_roots_rec(p, lo, hi, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-12 * std::max(1.0, std::abs(a)); }),
              out.end());
    return out;
}

/// All real roots over the whole line.
inline std::vector<double> poly_real_roots(const Poly1& p) {
    double b = cauchy_root_bound(p);
    return poly_real_roots(p, -b, b);
}

}  // namespace phase_sentinel
