#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "phase_sentinel/core/errors.hpp"
#include "phase_sentinel/core/poly.hpp"
#include "phase_sentinel/num/quad.hpp"

namespace phase_sentinel {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Continuous piecewise-linear profile with explicit breakpoints.
struct PiecewiseLinear {
    struct Segment {
        double lo, hi;      // [lo, hi], lo may be -inf and hi +inf
        double slope, intercept;
    };
    std::vector<Segment> segments;  // contiguous and ordered

    double eval(double x) const {
        for (const auto& s : segments)
            if (x <= s.hi || &s == &segments.back()) return s.slope * x + s.intercept;
        return segments.back().slope * x + segments.back().intercept;
    }

    double slope_at(double x) const {
        for (const auto& s : segments)
            if (x <= s.hi || &s == &segments.back()) return s.slope;
        return segments.back().slope;
    }

    double max_abs_slope() const {
        double m = 0.0;
        for (const auto& s : segments) m = std::max(m, std::abs(s.slope));
        return m;
    }

    bool contiguous(double tol = 1e-12) const {
        for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
            if (segments[i].hi != segments[i + 1].lo) return false;
            double x = segments[i].hi;
            double left = segments[i].slope * x + segments[i].intercept;
            double right = segments[i + 1].slope * x + segments[i + 1].intercept;
            if (std::abs(left - right) > tol * std::max(1.0, std::abs(left))) return false;
        }
        return true;
    }
};

/// Opaque evaluable with a user-declared smoothness flag; series extraction
/// refuses these rather than finite-differencing.
struct Opaque1D {
    std::function<double(double)> fn;
    bool smooth = false;
};

/// One-dimensional profile g(x) on an open interval (alpha, beta).
struct ScalarField1D {
    std::variant<Poly1, PiecewiseLinear, Opaque1D> rep;
    double alpha = -kInf;
    double beta = kInf;

    ScalarField1D() : rep(Poly1{}) {}
    ScalarField1D(Poly1 p, double a = -kInf, double b = kInf) : rep(std::move(p)), alpha(a), beta(b) {}
    ScalarField1D(PiecewiseLinear pw, double a = -kInf, double b = kInf) : rep(std::move(pw)), alpha(a), beta(b) {}
    ScalarField1D(Opaque1D op, double a = -kInf, double b = kInf) : rep(std::move(op)), alpha(a), beta(b) {}

    double eval(double x) const {
        return std::visit([&](const auto& r) -> double {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, Poly1>) return r.eval(x);
            else if constexpr (std::is_same_v<T, PiecewiseLinear>) return r.eval(x);
            else return r.fn(x);
        }, rep);
    }

    double operator()(double x) const { return eval(x); }

    const Poly1* poly() const { return std::get_if<Poly1>(&rep); }
    const PiecewiseLinear* piecewise() const { return std::get_if<PiecewiseLinear>(&rep); }
    bool opaque() const { return std::holds_alternative<Opaque1D>(rep); }
};

struct Opaque2D {
    std::function<double(double, double)> fn;
    bool smooth = false;
    // set when f(x,y) is known to depend on x only; enables the Lienard reduction
    std::function<double(double)> x_only_profile;
};

/// Two-dimensional profile f(x, y) on the strip (alpha, beta) x R.
struct ScalarField2D {
    std::variant<Poly2, Opaque2D> rep;

    ScalarField2D() : rep(Poly2{}) {}
    ScalarField2D(Poly2 p) : rep(std::move(p)) {}
    ScalarField2D(Opaque2D op) : rep(std::move(op)) {}

    double eval(double x, double y) const {
        return std::visit([&](const auto& r) -> double {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, Poly2>) return r.eval(x, y);
            else return r.fn(x, y);
        }, rep);
    }

    double operator()(double x, double y) const { return eval(x, y); }

    const Poly2* poly() const { return std::get_if<Poly2>(&rep); }
    const Opaque2D* opaque() const { return std::get_if<Opaque2D>(&rep); }
};

struct Point {
    double x = 0.0, y = 0.0;
};

struct Velocity {
    double vx = 0.0, vy = 0.0;
};

/// Potential G(x) = int_0^x g; exact for polynomials, closed form for
/// piecewise-linear, adaptive quadrature otherwise.
inline double field_potential(const ScalarField1D& g, double x) {
    if (const Poly1* p = g.poly()) {
        // antiderivative by Horner without materializing it
        double acc = 0.0;
        for (std::size_t i = p->c.size(); i-- > 0;) acc = acc * x + p->c[i] / static_cast<double>(i + 1);
        return acc * x;
    }
    if (const PiecewiseLinear* pw = g.piecewise()) {
        double a = std::min(0.0, x), b = std::max(0.0, x);
        double acc = 0.0;
        for (const auto& s : pw->segments) {
            double lo = std::max(a, s.lo), hi = std::min(b, s.hi);
            if (lo >= hi) continue;
            acc += 0.5 * s.slope * (hi * hi - lo * lo) + s.intercept * (hi - lo);
        }
        return x >= 0.0 ? acc : -acc;
    }
    const auto& fn = std::get<Opaque1D>(g.rep).fn;
    return integrate_1d(fn, 0.0, x);
}

/// The planar system  x' = y,  y' = -g(x) - f(x,y) y  on (alpha, beta) x R.
struct PlanarSystem {
    ScalarField1D g;
    ScalarField2D f;
    double alpha = -kInf;
    double beta = kInf;

    Velocity eval(double x, double y) const {
        return {y, -g.eval(x) - f.eval(x, y) * y};
    }

    double potential(double x) const;
};

inline double PlanarSystem::potential(double x) const { return field_potential(g, x); }

/// eval_field with the strip check from the contract.
inline Velocity eval_field(const PlanarSystem& sys, Point p) {
    if (!(p.x > sys.alpha && p.x < sys.beta))
        throw DomainError("x outside (alpha, beta)");
    return sys.eval(p.x, p.y);
}

enum class Family { sys61, sys71, general };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::sys61: return "sys61";
        case Family::sys71: return "sys71";
        default: return "general";
    }
}

/// Parameters of the cubic family  x' = y,
/// y' = -lambda x - mu y - kappa x^3 - a x^2 y - b x y^2 - c y^3.
struct CubicParams {
    double lambda = 0.0;
    double mu = 0.0;
    double kappa = 0.0;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    Family family = Family::general;
};

inline PlanarSystem to_system(const CubicParams& p) {
    double kappa = (p.family == Family::sys61) ? 1.0 : (p.family == Family::sys71 ? 0.0 : p.kappa);
    double lambda = (p.family == Family::sys71) ? 1.0 : p.lambda;
    Poly1 g;
    g.set_coeff(1, lambda);
    g.set_coeff(3, kappa);
    Poly2 f;
    f.add_term(0, 0, p.mu);
    f.add_term(2, 0, p.a);
    f.add_term(1, 1, p.b);
    f.add_term(0, 2, p.c);
    PlanarSystem s;
    s.g = ScalarField1D(g);
    s.f = ScalarField2D(f);
    return s;
}

}  // namespace phase_sentinel
