#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "phase_sentinel/compactify/phi.hpp"
#include "phase_sentinel/core/errors.hpp"
#include "phase_sentinel/core/system.hpp"

namespace phase_sentinel {

/// Region label of the global-phase-portrait classification, together with
/// every discriminant evaluated on the way (the chosen sign branch is part
/// of the answer on the measure-zero strata).
struct RegionLabel {
    Family family = Family::sys61;
    std::string label;  // "S1".."S18" or "G1".."G15"
    std::map<std::string, double> discriminants;
};

namespace detail {

// sign with the boundary tolerance policy: |v| <= 1e-12 * max(1, scale) is 0
inline int tsign(double v, double scale = 1.0) {
    if (std::abs(v) <= 1e-12 * std::max(1.0, std::abs(scale))) return 0;
    return v > 0.0 ? 1 : -1;
}

}  // namespace detail

/// Classify the cubic family x' = y, y' = -lambda x - mu y - x^3 - a x^2 y
/// - b x y^2 - c y^3 into its eighteen portrait regions.
inline RegionLabel region61(double lambda, double mu, double a, double b, double c) {
    if (lambda < 0.0 || mu < 0.0 || a < 0.0 || c < 0.0 || b == 0.0)
        throw OutOfRegion("parameters outside the admissible set (lambda, mu, a, c >= 0, b != 0)");
    RegionLabel out;
    out.family = Family::sys61;
    auto& d = out.discriminants;

    int sc = detail::tsign(c);
    d["c"] = c;
    if (sc == 0) {
        bool am_zero = detail::tsign(a) == 0 && detail::tsign(mu) == 0;
        d["a^2+mu^2"] = a * a + mu * mu;
        if (am_zero) {
            out.label = b < 0.0 ? "S1" : "S2";
            return out;
        }
        double q = b - a * a / 4.0;
        d["b-a^2/4"] = q;
        int sq = detail::tsign(q, std::max(std::abs(b), a * a));
        if (b < 0.0) {
            out.label = "S5";
            return out;
        }
        if (sq > 0) {
            out.label = "S3";
            return out;
        }
        if (sq < 0) {
            out.label = "S4";
            return out;
        }
        double u0 = -a / (2.0 * b);
        double gamma = u0 * u0 + mu * u0 + lambda;
        d["u0"] = u0;
        d["u0^2+mu*u0+lambda"] = gamma;
        int sg = detail::tsign(gamma, u0 * u0 + std::abs(mu * u0) + lambda);
        out.label = sg < 0 ? "S6" : (sg == 0 ? "S7" : "S8");
        return out;
    }

    // c > 0
    PhiAnalysis phi = phi_analysis(a, b, c);
    double s3 = std::sqrt(3.0 * a * c);
    d["sqrt(3ac)"] = s3;
    int side = detail::tsign(std::abs(b) - s3, std::abs(b) + s3);
    if (side <= 0) {
        out.label = "S9";
        return out;
    }
    double scale_phi = std::abs(b * b * b) / (c * c) + 1.0;
    if (b > 0.0) {
        double rho1 = phi.data.rho1.value();
        double phi1 = phi.data.phi_rho1.value();
        d["rho1"] = rho1;
        d["Phi(rho1)"] = phi1;
        int s1 = detail::tsign(phi1, scale_phi);
        if (s1 < 0) {
            out.label = "S9";
            return out;
        }
        if (s1 == 0) {
            double e = rho1 * rho1 + mu * rho1 + lambda;
            d["rho1^2+mu*rho1+lambda"] = e;
            int se = detail::tsign(e, rho1 * rho1 + std::abs(mu * rho1) + lambda);
            out.label = se < 0 ? "S10" : (se == 0 ? "S11" : "S12");
            return out;
        }
        double rho2 = phi.data.rho2.value();
        double phi2 = phi.data.phi_rho2.value();
        d["rho2"] = rho2;
        d["Phi(rho2)"] = phi2;
        int s2 = detail::tsign(phi2, scale_phi);
        if (s2 > 0) {
            out.label = "S9";
            return out;
        }
        if (s2 < 0) {
            out.label = "S17";
            return out;
        }
        double e = rho2 * rho2 + mu * rho2 + lambda;
        d["rho2^2+mu*rho2+lambda"] = e;
        int se = detail::tsign(e, rho2 * rho2 + std::abs(mu * rho2) + lambda);
        out.label = se < 0 ? "S14" : (se == 0 ? "S15" : "S16");
        return out;
    }
    // b < -sqrt(3ac)
    double rho2 = phi.data.rho2.value();
    double phi2 = phi.data.phi_rho2.value();
    d["rho2"] = rho2;
    d["Phi(rho2)"] = phi2;
    int s2 = detail::tsign(phi2, scale_phi);
    if (s2 > 0) out.label = "S9";
    else if (s2 == 0) out.label = "S13";
    else out.label = "S18";
    return out;
}

/// Classify the quadratic-boundary family x' = y, y' = -x - mu y - a x^2 y
/// - b x y^2 - c y^3 into its fifteen portrait regions.
inline RegionLabel region71(double mu, double a, double b, double c) {
    if (mu < 0.0 || a < 0.0 || c < 0.0 || b == 0.0)
        throw OutOfRegion("parameters outside the admissible set (mu, a, c >= 0, b != 0)");
    RegionLabel out;
    out.family = Family::sys71;
    auto& d = out.discriminants;

    int sa = detail::tsign(a), sc = detail::tsign(c), sm = detail::tsign(mu);
    d["a"] = a;
    d["c"] = c;
    d["mu"] = mu;
    if (sa == 0 && sc == 0) {
        if (sm == 0) out.label = b > 0.0 ? "G1" : "G2";
        else out.label = b < 0.0 ? "G3" : "G4";
        return out;
    }
    if (sa > 0 && sc == 0) {
        out.label = b > 0.0 ? "G5" : "G6";
        return out;
    }
    if (sa == 0 && sc > 0) {
        out.label = b > 0.0 ? "G7" : "G8";
        return out;
    }
    // a > 0, c > 0
    double s2 = 2.0 * std::sqrt(a * c);
    d["2sqrt(ac)"] = s2;
    int rel = detail::tsign(std::abs(b) - s2, std::abs(b) + s2);
    if (rel < 0) {
        out.label = "G9";
        return out;
    }
    if (rel > 0) {
        out.label = b > 0.0 ? "G10" : "G11";
        return out;
    }
    if (b < 0.0) {
        out.label = "G13";
        return out;
    }
    double e = a - mu * std::sqrt(a * c) + c;
    d["a-mu*sqrt(ac)+c"] = e;
    int se = detail::tsign(e, a + mu * std::sqrt(a * c) + c);
    out.label = se < 0 ? "G12" : (se == 0 ? "G14" : "G15");
    return out;
}

inline RegionLabel classify_region(const CubicParams& p) {
    if (p.family == Family::sys61) return region61(p.lambda, p.mu, p.a, p.b, p.c);
    if (p.family == Family::sys71) return region71(p.mu, p.a, p.b, p.c);
    throw OutOfRegion("region classification needs the sys61 or sys71 family");
}

}  // namespace phase_sentinel
