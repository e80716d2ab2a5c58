#pragma once

#include <cmath>
#include <optional>

#include "phase_sentinel/core/errors.hpp"
#include "phase_sentinel/core/system.hpp"

namespace phase_sentinel {

/// Local jet of the system at the origin:
///   g(x) = a x + ...            with a = g'(0), a_k x^k the first nonzero term,
///   f(x,y) = b + b_n x^n + ... + y p(x,y)   with b = f(0,0).
struct SeriesData {
    double a = 0.0;               // g'(0)
    double b = 0.0;               // f(0,0)
    double a_k = 0.0;             // first nonzero g coefficient
    int k = 0;                    // its degree (k = 1 when a != 0)
    std::optional<double> b_n;    // first nonzero pure-x coefficient of f beyond b
    std::optional<int> n;
    bool y_remainder_present = false;  // f carries a y * p(x,y) part
};

inline constexpr int kDefaultSeriesOrder = 16;

/// Extract SeriesData from the jet at the origin.  Opaque representations are
/// refused (OrderExhausted) instead of finite-differenced.
inline SeriesData series_at_origin(const PlanarSystem& sys, int max_order = kDefaultSeriesOrder) {
    SeriesData out;

    if (sys.g.opaque()) throw OrderExhausted("opaque g: no series available");
    if (std::abs(sys.g.eval(0.0)) > 0.0) throw NotAnEquilibrium("g(0) != 0");

    if (const Poly1* gp = sys.g.poly()) {
        out.a = gp->coeff(1);
        auto [ak, k] = gp->leading_from(1);
        if (k < 0 || k > max_order) throw OrderExhausted("g has no nonzero coefficient within max_order");
        out.a_k = ak;
        out.k = k;
    } else {
        const PiecewiseLinear* pw = sys.g.piecewise();
        double s = pw->slope_at(0.0);
        if (s == 0.0) throw OrderExhausted("piecewise g is flat at the origin");
        out.a = s;
        out.a_k = s;
        out.k = 1;
    }

    if (const Poly2* fp = sys.f.poly()) {
        out.b = fp->coeff(0, 0);
        double bn = 0.0;
        int n = -1;
        for (int i = 1; i <= max_order; ++i) {
            double ci = fp->coeff(i, 0);
            if (ci != 0.0) {
                bn = ci;
                n = i;
                break;
            }
        }
        if (n > 0) {
            out.b_n = bn;
            out.n = n;
        }
        for (const auto& [ij, v] : fp->m)
            if (ij.second >= 1 && v != 0.0) out.y_remainder_present = true;
    } else {
        throw OrderExhausted("opaque f: no series available");
    }
    return out;
}

}  // namespace phase_sentinel
