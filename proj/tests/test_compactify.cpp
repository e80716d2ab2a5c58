#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "phase_sentinel/compactify/blowup.hpp"
#include "phase_sentinel/compactify/chart.hpp"
#include "phase_sentinel/compactify/disc.hpp"
#include "phase_sentinel/compactify/infinity.hpp"
#include "phase_sentinel/compactify/phi.hpp"
#include "phase_sentinel/flow/integrate.hpp"

using namespace phase_sentinel;

namespace {

CubicParams c61(double lambda, double mu, double a, double b, double c) {
    CubicParams p;
    p.lambda = lambda;
    p.mu = mu;
    p.a = a;
    p.b = b;
    p.c = c;
    p.kappa = 1.0;
    p.family = Family::sys61;
    return p;
}

CubicParams c71(double mu, double a, double b, double c) {
    CubicParams p;
    p.lambda = 1.0;
    p.mu = mu;
    p.a = a;
    p.b = b;
    p.c = c;
    p.kappa = 0.0;
    p.family = Family::sys71;
    return p;
}

const InfinityEquilibrium* find_eq(const std::vector<InfinityEquilibrium>& eqs, const std::string& label) {
    for (const auto& e : eqs)
        if (e.label == label) return &e;
    return nullptr;
}

// offset 1e-3 along an on-axis direction and check in which time sense the
// orbit approaches the equilibrium
bool approaches(const ChartSystem& cs, double u_star, double angle, int sense) {
    double dx = std::cos(angle), dz = std::sin(angle);
    if (std::abs(dz) < 1e-12) dz = 0.0;  // keep on-axis probes on the invariant axis
    if (std::abs(dx) < 1e-12) dx = 0.0;
    Point p{u_star + 1e-3 * dx, 1e-3 * dz};
    IntegrateOptions opts;
    opts.tol = 1e-10;
    opts.t_end = 1e5;
    opts.record_samples = false;
    opts.converge_center = {u_star, 0.0};
    opts.converge_radius = 2e-4;
    opts.escape_radius = std::abs(u_star) + 1.0;
    ChartField f{&cs};
    OrbitTrace tr = (sense > 0) ? integrate_field(f, p, opts)
                                : integrate_field(ReversedField<ChartField>{f}, p, opts);
    return tr.termination == Termination::Converged;
}

void spot_check_table(const CubicParams& p, const InfinityEquilibrium& eq, const InfinityClass& cls) {
    ChartSystem cs = chart_transform(p, eq.chart);
    for (const auto& d : cls.directions) {
        if (d.infinitely_many) continue;
        if (std::abs(std::sin(d.angle)) > 1e-12) continue;  // on-axis rows only
        INFO("table " << cls.table << " angle " << d.angle);
        REQUIRE(approaches(cs, eq.position, d.angle, d.time_sense));
        REQUIRE_FALSE(approaches(cs, eq.position, d.angle, -d.time_sense));
    }
}

}  // namespace

TEST_CASE("chart systems at reference points") {
    SECTION("cubic family, horizontal chart") {
        ChartSystem cs = chart_transform(c61(2.0, 1.0, 1.0, 1.0, 1.0), Chart::U);
        Velocity v = cs.eval(0.0, 1.0);
        REQUIRE(v.vx == Catch::Approx(-2.0 - 1.0));  // -lambda - 1
        REQUIRE(v.vy == 0.0);
    }
    SECTION("cubic family, vertical chart") {
        ChartSystem cs = chart_transform(c61(1.0, 1.0, 1.0, 1.0, 1.0), Chart::V);
        Velocity v = cs.eval(0.0, 1.0);
        REQUIRE(v.vx == Catch::Approx(1.0));
    }
    SECTION("quadratic family, horizontal chart") {
        ChartSystem cs = chart_transform(c71(1.0, 1.0, 1.0, 1.0), Chart::U);
        Velocity v = cs.eval(0.0, 1.0);
        REQUIRE(v.vx == Catch::Approx(-1.0));
    }
}

TEST_CASE("chart consistency against the plane field") {
    REQUIRE(verify_chart_consistency(c61(1.0, 0.5, 2.0, -1.5, 0.7), 100) < 1e-10);
    REQUIRE(verify_chart_consistency(c71(0.3, 1.2, 2.5, 0.4), 100) < 1e-10);
    SECTION("negative control: corrupted coefficient is caught") {
        CubicParams p = c61(1.0, 0.5, 2.0, -1.5, 0.7);
        ChartSystem good = chart_transform(p, Chart::U);
        ChartSystem bad = good;
        bad.d_first.add_term(1, 0, 0.5);  // corrupt the a-coefficient
        PlanarSystem plane = to_system(p);
        double defect = 0.0;
        for (double x : {0.7, 1.3, -0.9}) {
            double y = 1.1;
            Velocity v = plane.eval(x, y);
            double z = 1.0 / x, u = y / x;
            double du_dt = z * v.vy - u * z * v.vx;
            Velocity w = bad.eval(u, z);
            defect = std::max(defect, std::abs(w.vx - z * z * du_dt));
        }
        REQUIRE(defect > 1e-6);
    }
}

TEST_CASE("boundary polynomial analysis") {
    SECTION("monotone cubic with the root at -1") {
        PhiAnalysis r = phi_analysis(1.0, 1.0, 1.0);
        REQUIRE(r.roots.size() == 1);
        REQUIRE(r.roots[0] == Catch::Approx(-1.0).margin(1e-12));
    }
    SECTION("two critical points but a single root") {
        PhiAnalysis r = phi_analysis(1.0, 3.0, 1.0);
        REQUIRE(r.data.rho1.value() == Catch::Approx((-3.0 - std::sqrt(6.0)) / 3.0).margin(1e-12));
        REQUIRE(r.data.rho2.value() == Catch::Approx((-3.0 + std::sqrt(6.0)) / 3.0).margin(1e-12));
        REQUIRE(r.data.phi_rho1.value() == Catch::Approx(3.0886).margin(1e-3));
        REQUIRE(r.data.phi_rho2.value() == Catch::Approx(0.9113).margin(1e-3));
        REQUIRE(r.roots.size() == 1);
        REQUIRE(r.roots[0] == Catch::Approx(-2.77).margin(5e-3));
    }
    SECTION("three rational roots") {
        PhiAnalysis r = phi_analysis(3.5, 3.5, 1.0);
        REQUIRE(r.roots.size() == 3);
        REQUIRE(r.roots[0] == Catch::Approx(-2.0).margin(1e-10));
        REQUIRE(r.roots[1] == Catch::Approx(-1.0).margin(1e-10));
        REQUIRE(r.roots[2] == Catch::Approx(-0.5).margin(1e-10));
    }
    SECTION("critical points satisfy the derivative equation") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(0.0, 4.0);
        for (int i = 0; i < 200; ++i) {
            double a = u(rng), b = u(rng) * 2.0 - 4.0, c = 0.1 + u(rng);
            PhiAnalysis r = phi_analysis(a, b, c);
            if (!r.data.rho1) continue;
            Poly1 dphi = phi_poly(a, b, c).derivative();
            REQUIRE(std::abs(dphi.eval(*r.data.rho1)) < 1e-10 * std::max(1.0, b * b));
            REQUIRE(std::abs(dphi.eval(*r.data.rho2)) < 1e-10 * std::max(1.0, b * b));
        }
    }
    SECTION("root count matches a brute-force sign scan") {
        std::mt19937_64 rng(77);
        std::uniform_real_distribution<double> u(0.0, 4.0);
        for (int i = 0; i < 200; ++i) {
            double a = u(rng), b = u(rng) * 2.0 - 4.0, c = 0.1 + u(rng);
            PhiAnalysis r = phi_analysis(a, b, c);
            Poly1 phi = phi_poly(a, b, c);
            double bound = cauchy_root_bound(phi);
            int scan = 0;
            const int n = 100000;
            double prev = phi.eval(-bound);
            for (int j = 1; j <= n; ++j) {
                double x = -bound + 2.0 * bound * j / n;
                double v = phi.eval(x);
                if (prev != 0.0 && v != 0.0 && (prev < 0.0) != (v < 0.0)) ++scan;
                if (v != 0.0) prev = v;
            }
            REQUIRE(static_cast<int>(r.roots.size()) == scan);
        }
    }
}

TEST_CASE("equilibria at infinity") {
    SECTION("linear boundary cases of the cubic family") {
        auto eqs = infinity_equilibria(c61(1.0, 1.0, 3.0, 1.0, 0.0));  // a^2 - 4b = 5 > 0
        REQUIRE(eqs.size() == 3);
        REQUIRE(find_eq(eqs, "A") != nullptr);
        REQUIRE(find_eq(eqs, "B") != nullptr);
        REQUIRE(find_eq(eqs, "D") != nullptr);
        REQUIRE(find_eq(eqs, "A")->position == Catch::Approx((-3.0 - std::sqrt(5.0)) / 2.0));
    }
    SECTION("double root collapses to one equilibrium") {
        auto eqs = infinity_equilibria(c61(1.0, 1.0, 2.0, 1.0, 0.0));  // a^2 = 4b
        REQUIRE(eqs.size() == 2);
        REQUIRE(find_eq(eqs, "C") != nullptr);
        REQUIRE(find_eq(eqs, "C")->position == Catch::Approx(-1.0));
    }
    SECTION("unique cubic root") {
        auto eqs = infinity_equilibria(c61(1.0, 1.0, 1.0, 1.0, 1.0));
        REQUIRE(eqs.size() == 2);
        REQUIRE(find_eq(eqs, "E")->position == Catch::Approx(-1.0));
    }
    SECTION("quadratic family inventory") {
        auto eqs = infinity_equilibria(c71(1.0, 0.0, 1.0, 0.0));
        REQUIRE(eqs.size() == 2);
        REQUIRE(find_eq(eqs, "G") != nullptr);
        REQUIRE(find_eq(eqs, "D") != nullptr);
        auto eqs2 = infinity_equilibria(c71(1.0, 1.0, 1.0, 1.0));  // b^2 - 4ac < 0
        REQUIRE(eqs2.size() == 2);
        auto eqs3 = infinity_equilibria(c71(2.0, 1.0, 2.0, 1.0));  // b^2 = 4ac
        REQUIRE(find_eq(eqs3, "T") != nullptr);
        auto eqs4 = infinity_equilibria(c71(1.0, 1.0, 3.0, 1.0));  // b^2 - 4ac > 0
        REQUIRE(find_eq(eqs4, "P1") != nullptr);
        REQUIRE(find_eq(eqs4, "P2") != nullptr);
    }
}

TEST_CASE("classification of semi-hyperbolic equilibria at infinity") {
    SECTION("vertical pair is an unstable star node for c > 0") {
        CubicParams p = c61(1.0, 1.0, 1.0, 1.0, 1.0);
        InfinityClass cls = classify_infinity(*find_eq(infinity_equilibria(p), "D"), p);
        REQUIRE(cls.kind == EquilibriumKind::UnstableNode);
        REQUIRE(cls.star);
    }
    SECTION("linear boundary, positive quadratic coefficient") {
        CubicParams p = c61(1.0, 1.0, 3.0, 1.0, 0.0);
        auto eqs = infinity_equilibria(p);
        REQUIRE(classify_infinity(*find_eq(eqs, "A"), p).kind == EquilibriumKind::UnstableNode);
        REQUIRE(classify_infinity(*find_eq(eqs, "B"), p).kind == EquilibriumKind::Saddle);
    }
    SECTION("linear boundary, negative quadratic coefficient") {
        CubicParams p = c61(1.0, 1.0, 1.0, -1.0, 0.0);
        auto eqs = infinity_equilibria(p);
        REQUIRE(classify_infinity(*find_eq(eqs, "A"), p).kind == EquilibriumKind::Saddle);
        REQUIRE(classify_infinity(*find_eq(eqs, "B"), p).kind == EquilibriumKind::Saddle);
    }
    SECTION("unique cubic root is a saddle") {
        CubicParams p = c61(1.0, 1.0, 1.0, 1.0, 1.0);
        REQUIRE(classify_infinity(*find_eq(infinity_equilibria(p), "E"), p).kind == EquilibriumKind::Saddle);
    }
    SECTION("three boundary roots on the positive-b side") {
        CubicParams p = c61(1.0, 1.0, 1.0, -4.0, 1.0);
        auto eqs = infinity_equilibria(p);
        REQUIRE(classify_infinity(*find_eq(eqs, "F1"), p).kind == EquilibriumKind::Saddle);
        REQUIRE(classify_infinity(*find_eq(eqs, "F2"), p).kind == EquilibriumKind::Saddle);
        REQUIRE(classify_infinity(*find_eq(eqs, "F3"), p).kind == EquilibriumKind::StableNode);
    }
    SECTION("three boundary roots on the negative-u side") {
        CubicParams p = c61(1.0, 1.0, 3.5, 3.5, 1.0);
        auto eqs = infinity_equilibria(p);
        REQUIRE(find_eq(eqs, "F1")->position == Catch::Approx(-2.0).margin(1e-9));
        REQUIRE(classify_infinity(*find_eq(eqs, "F1"), p).kind == EquilibriumKind::Saddle);
        REQUIRE(classify_infinity(*find_eq(eqs, "F2"), p).kind == EquilibriumKind::UnstableNode);
        REQUIRE(classify_infinity(*find_eq(eqs, "F3"), p).kind == EquilibriumKind::Saddle);
    }
    SECTION("quadratic family boundary types") {
        CubicParams p1 = c71(1.0, 1.0, 1.0, 0.0);  // c = 0, a > 0, b > 0
        auto e1 = infinity_equilibria(p1);
        REQUIRE(classify_infinity(*find_eq(e1, "G"), p1).kind == EquilibriumKind::Saddle);
        REQUIRE(classify_infinity(*find_eq(e1, "R"), p1).kind == EquilibriumKind::UnstableNode);
        CubicParams p2 = c71(1.0, 1.0, -1.0, 0.0);
        auto e2 = infinity_equilibria(p2);
        REQUIRE(classify_infinity(*find_eq(e2, "R"), p2).kind == EquilibriumKind::Saddle);
        CubicParams p3 = c71(1.0, 0.0, 1.0, 1.0);  // a = 0, c > 0, b > 0
        auto e3 = infinity_equilibria(p3);
        REQUIRE(classify_infinity(*find_eq(e3, "S"), p3).kind == EquilibriumKind::Saddle);
        CubicParams p4 = c71(1.0, 0.0, -1.0, 1.0);
        auto e4 = infinity_equilibria(p4);
        REQUIRE(classify_infinity(*find_eq(e4, "S"), p4).kind == EquilibriumKind::StableNode);
        // For b^2 > 4ac the types follow from the chart field directly: at a
        // root r of c u^2 + b u + a, the axis eigenvalue is -r Psi'(r) and the
        // transverse direction obeys dz = -z^3 r, so sign(r) decides it.
        // b > 0: roots are negative, P1 (closer to 0) repels both ways.
        CubicParams p5 = c71(1.0, 1.0, 3.0, 1.0);
        auto e5 = infinity_equilibria(p5);
        REQUIRE(classify_infinity(*find_eq(e5, "G"), p5).kind == EquilibriumKind::Saddle);
        REQUIRE(classify_infinity(*find_eq(e5, "P1"), p5).kind == EquilibriumKind::UnstableNode);
        REQUIRE(classify_infinity(*find_eq(e5, "P2"), p5).kind == EquilibriumKind::Saddle);
        // b < 0: roots are positive, P1 (farther out) attracts both ways.
        CubicParams p6 = c71(1.0, 1.0, -3.0, 1.0);
        auto e6 = infinity_equilibria(p6);
        REQUIRE(classify_infinity(*find_eq(e6, "P1"), p6).kind == EquilibriumKind::StableNode);
        REQUIRE(classify_infinity(*find_eq(e6, "P2"), p6).kind == EquilibriumKind::Saddle);
    }
}

TEST_CASE("direction tables of the degenerate equilibria at infinity") {
    SECTION("double linear root, positive residual discriminant") {
        CubicParams p = c61(1.0, 1.0, 2.0, 1.0, 0.0);  // u0 = -1, gamma = 1 > 0
        auto eqs = infinity_equilibria(p);
        InfinityClass cls = classify_infinity(*find_eq(eqs, "C"), p);
        REQUIRE(cls.table == "C1");
        REQUIRE(cls.directions.size() == 2);
        spot_check_table(p, *find_eq(eqs, "C"), cls);
    }
    SECTION("double cubic root at the local maximum") {
        // Phi = 0.5 (u+2)^2 (u+0.5): double root at rho1 = -2
        CubicParams p = c61(1.0, 3.0, 3.0, 2.25, 0.5);
        auto eqs = infinity_equilibria(p);
        REQUIRE(find_eq(eqs, "K") != nullptr);
        REQUIRE(find_eq(eqs, "K")->position == Catch::Approx(-2.0).margin(1e-9));
        REQUIRE(find_eq(eqs, "F") != nullptr);
        REQUIRE(classify_infinity(*find_eq(eqs, "F"), p).kind == EquilibriumKind::Saddle);
        InfinityClass cls = classify_infinity(*find_eq(eqs, "K"), p);
        REQUIRE(cls.table == "K1");  // rho1^2 + mu rho1 + lambda = 4 - 6 + 1 < 0
        spot_check_table(p, *find_eq(eqs, "K"), cls);
    }
    SECTION("double cubic root at the local minimum") {
        // Phi = (u - 3/2)^2 (u + 4/9): a = 11/12, b = -23/9, c = 1
        CubicParams p = c61(1.0, 1.0, 11.0 / 12.0, -23.0 / 9.0, 1.0);
        auto eqs = infinity_equilibria(p);
        REQUIRE(find_eq(eqs, "Q") != nullptr);
        REQUIRE(find_eq(eqs, "Q")->position == Catch::Approx(1.5).margin(1e-9));
        REQUIRE(find_eq(eqs, "F")->position == Catch::Approx(-4.0 / 9.0).margin(1e-9));
        InfinityClass cls = classify_infinity(*find_eq(eqs, "Q"), p);
        REQUIRE(cls.table == "Q1");
        spot_check_table(p, *find_eq(eqs, "Q"), cls);
    }
    SECTION("vertical pair for the linear boundary") {
        CubicParams p = c61(1.0, 1.0, 3.0, 1.0, 0.0);  // c = 0, b > 0
        auto eqs = infinity_equilibria(p);
        InfinityClass cls = classify_infinity(*find_eq(eqs, "D"), p);
        REQUIRE(cls.table == "D1");
        ChartSystem cv = chart_transform(p, Chart::V);
        for (const auto& d : cls.directions) {
            REQUIRE(approaches(cv, 0.0, d.angle, d.time_sense));
            REQUIRE_FALSE(approaches(cv, 0.0, d.angle, -d.time_sense));
        }
    }
    SECTION("quadratic family tangency cases") {
        CubicParams p = c71(1.0, 1.0, -2.0, 1.0);  // b = -2 sqrt(ac)
        auto eqs = infinity_equilibria(p);
        InfinityClass cls = classify_infinity(*find_eq(eqs, "T"), p);
        REQUIRE(cls.table == "T1");
        spot_check_table(p, *find_eq(eqs, "T"), cls);
        CubicParams p2 = c71(3.0, 1.0, 2.0, 1.0);  // b = 2 sqrt(ac), a - mu sqrt(ac) + c < 0
        InfinityClass cls2 = classify_infinity(*find_eq(infinity_equilibria(p2), "T"), p2);
        REQUIRE(cls2.table == "T1");
        REQUIRE(cls2.directions[0].time_sense == -1);
        CubicParams p4 = c71(1.0, 1.0, 2.0, 1.0);  // a - mu sqrt(ac) + c > 0
        InfinityClass cls4 = classify_infinity(*find_eq(infinity_equilibria(p4), "T"), p4);
        REQUIRE(cls4.table == "T3");
        REQUIRE(cls4.directions.size() == 6);
    }
    SECTION("degenerate horizontal pair of the quadratic family") {
        CubicParams p = c71(1.0, 0.0, 1.0, 0.0);  // a = c = 0, b > 0
        auto eqs = infinity_equilibria(p);
        InfinityClass cls = classify_infinity(*find_eq(eqs, "G"), p);
        REQUIRE(cls.table == "G3");
        spot_check_table(p, *find_eq(eqs, "G"), cls);
        CubicParams p2 = c71(1.0, 0.0, -1.0, 0.0);
        InfinityClass cls2 = classify_infinity(*find_eq(infinity_equilibria(p2), "G"), p2);
        REQUIRE(cls2.table == "G2");
        REQUIRE(cls2.directions.size() == 6);
    }
}

TEST_CASE("polar generic-check values match the published expressions") {
    SECTION("double linear root: G'(0) H(0) = -b^2") {
        CubicParams p = c61(1.0, 1.0, 2.0, 1.0, 0.0);
        InfinityClass cls = classify_infinity(*find_eq(infinity_equilibria(p), "C"), p);
        REQUIRE(cls.generic_checks.size() == 2);
        REQUIRE(cls.generic_checks[0].second == Catch::Approx(-1.0).margin(1e-6));
        REQUIRE(cls.generic_checks[1].second == Catch::Approx(-1.0).margin(1e-6));
    }
    SECTION("double cubic root: G'(0) H(0) = 3ac - b^2") {
        CubicParams p = c61(1.0, 3.0, 3.0, 2.25, 0.5);
        InfinityClass cls = classify_infinity(*find_eq(infinity_equilibria(p), "K"), p);
        double expected = 3.0 * 3.0 * 0.5 - 2.25 * 2.25;
        REQUIRE(cls.generic_checks[0].second == Catch::Approx(expected).margin(1e-5));
    }
    SECTION("vertical pair for the linear boundary: G'''(0) H(0) = -6b") {
        CubicParams p = c61(1.0, 1.0, 3.0, 1.0, 0.0);
        InfinityClass cls = classify_infinity(*find_eq(infinity_equilibria(p), "D"), p);
        REQUIRE(cls.generic_checks[0].second == Catch::Approx(-6.0).margin(1e-4));
        CubicParams p2 = c61(1.0, 1.0, 3.0, -1.0, 0.0);
        InfinityClass cls2 = classify_infinity(*find_eq(infinity_equilibria(p2), "D"), p2);
        REQUIRE(cls2.generic_checks[0].second == Catch::Approx(6.0).margin(1e-4));
    }
    SECTION("quadratic family horizontal pair: G'(0) H(0) = -b^2") {
        CubicParams p = c71(1.0, 0.0, 1.5, 0.0);
        InfinityClass cls = classify_infinity(*find_eq(infinity_equilibria(p), "G"), p);
        REQUIRE(cls.generic_checks[0].second == Catch::Approx(-2.25).margin(1e-5));
    }
    SECTION("tangency pair: G'(0) H(0) = -b^2/4") {
        CubicParams p = c71(1.0, 1.0, -2.0, 1.0);
        InfinityClass cls = classify_infinity(*find_eq(infinity_equilibria(p), "T"), p);
        REQUIRE(cls.generic_checks[0].second == Catch::Approx(-1.0).margin(1e-5));
    }
}

TEST_CASE("directional blow-up") {
    SECTION("reproduces the published blow-up coefficients exactly") {
        // du/dtau = -z^2 (u^2 + (mu+2u0) u + gamma) - b u^2, dz/dtau = -z^3 u - u0 z^3
        double u0 = -1.0, mu = 3.0, gamma = 2.0, b = 1.0;
        Poly2 P, Q;
        P.add_term(2, 2, -1.0);
        P.add_term(1, 2, -(mu + 2.0 * u0));
        P.add_term(0, 2, -gamma);
        P.add_term(2, 0, -b);
        Q.add_term(1, 3, -1.0);
        Q.add_term(0, 3, -u0);
        BlownUpSystem bu = briot_bouquet(P, Q, BlowupDirection::ZOverU);
        REQUIRE(bu.rescale_power == 1);
        // expected: du/ddelta = -zt^2 u (u^2 + (mu+2u0) u + gamma) - b u
        REQUIRE(bu.d_first.coeff(3, 2) == -1.0);
        REQUIRE(bu.d_first.coeff(2, 2) == -(mu + 2.0 * u0));
        REQUIRE(bu.d_first.coeff(1, 2) == -gamma);
        REQUIRE(bu.d_first.coeff(1, 0) == -b);
        REQUIRE(bu.d_first.m.size() == 4);
        // expected: dzt/ddelta = (mu+u0) zt^3 u + gamma zt^3 + b zt
        REQUIRE(bu.d_second.coeff(1, 3) == (mu + u0));
        REQUIRE(bu.d_second.coeff(0, 3) == gamma);
        REQUIRE(bu.d_second.coeff(0, 1) == b);
        REQUIRE(bu.d_second.m.size() == 3);
        REQUIRE(bu.quadrant_map == std::array<int, 4>{1, 3, 2, 4});
    }
    SECTION("equilibria on the exceptional divisor") {
        double u0 = -1.0, mu = 4.0, gamma = -2.0, b = 1.0;
        Poly2 P, Q;
        P.add_term(2, 2, -1.0);
        P.add_term(1, 2, -(mu + 2.0 * u0));
        P.add_term(0, 2, -gamma);
        P.add_term(2, 0, -b);
        Q.add_term(1, 3, -1.0);
        Q.add_term(0, 3, -u0);
        BlownUpSystem bu = briot_bouquet(P, Q, BlowupDirection::ZOverU);
        // on u = 0: dzt = zt (gamma zt^2 + b) vanishes at 0 and +-sqrt(-b/gamma)
        double zt = std::sqrt(-b / gamma);
        REQUIRE(bu.d_second.eval(0.0, 0.0) == 0.0);
        REQUIRE(bu.d_second.eval(0.0, zt) == Catch::Approx(0.0).margin(1e-14));
        REQUIRE(bu.d_second.eval(0.0, -zt) == Catch::Approx(0.0).margin(1e-14));
    }
    SECTION("hyperbolic saddle survives the blow-up") {
        Poly2 P = Poly2::monomial(1, 0, 1.0);   // u' = u
        Poly2 Q = Poly2::monomial(0, 1, -1.0);  // z' = -z
        BlownUpSystem bu = briot_bouquet(P, Q, BlowupDirection::ZOverU);
        REQUIRE(bu.rescale_power == 0);
        // u' = u, zt' = -2 zt : still a saddle
        REQUIRE(bu.d_first.coeff(1, 0) == 1.0);
        REQUIRE(bu.d_second.coeff(0, 1) == -2.0);
    }
    SECTION("orbits off the divisor map onto each other") {
        double u0 = -1.0, mu = 3.0, gamma = 2.0, b = 1.0;
        Poly2 P, Q;
        P.add_term(2, 2, -1.0);
        P.add_term(1, 2, -(mu + 2.0 * u0));
        P.add_term(0, 2, -gamma);
        P.add_term(2, 0, -b);
        Q.add_term(1, 3, -1.0);
        Q.add_term(0, 3, -u0);
        BlownUpSystem bu = briot_bouquet(P, Q, BlowupDirection::ZOverU);

        struct RawField {
            const Poly2 *P, *Q;
            Velocity operator()(double u, double z) const { return {P->eval(u, z), Q->eval(u, z)}; }
        };
        RawField base{&P, &Q};
        RawField blown{&bu.d_first, &bu.d_second};

        IntegrateOptions opts;
        opts.tol = 1e-11;
        opts.t_end = 0.4;
        opts.h_max = 1e-3;
        OrbitTrace upstairs = integrate_field(base, {0.8, 0.3}, opts);
        IntegrateOptions opts2 = opts;
        opts2.t_end = 2.0;
        opts2.escape_radius = 5.0;  // the ratio variable blows up in finite time
        OrbitTrace downstairs = integrate_field(blown, {0.8, 0.3 / 0.8}, opts2);

        // compare zt = z/u at matched u along both curves (u is monotone here)
        auto interp = [&](double u) -> double {
            for (std::size_t i = 1; i < downstairs.samples.size(); ++i) {
                double u0s = downstairs.samples[i - 1].x, u1s = downstairs.samples[i].x;
                if ((u0s - u) * (u1s - u) <= 0.0 && u0s != u1s) {
                    double t = (u - u0s) / (u1s - u0s);
                    return downstairs.samples[i - 1].y +
                           t * (downstairs.samples[i].y - downstairs.samples[i - 1].y);
                }
            }
            return std::nan("");
        };
        int compared = 0;
        for (const auto& s : upstairs.samples) {
            if (s.x < 0.3) continue;
            double zt = interp(s.x);
            if (std::isnan(zt)) continue;
            ++compared;
            REQUIRE(std::abs(zt - s.y / s.x) < 1e-6);
        }
        REQUIRE(compared > 50);
    }
    SECTION("deep chains are refused") {
        Poly2 P = Poly2::monomial(2, 0, 1.0);
        Poly2 Q = Poly2::monomial(0, 2, -1.0);
        REQUIRE_THROWS_AS(briot_bouquet(P, Q, BlowupDirection::ZOverU, 4), UnhandledCase);
    }
}

TEST_CASE("disc projection") {
    REQUIRE(disc_project({0.0, 0.0}).xi == 0.0);
    REQUIRE(disc_project({1.0, 0.0}).xi == Catch::Approx(0.5));
    REQUIRE(disc_project({1.0, 0.0}).eta == 0.0);
    SECTION("boundary pair of a horizontal-chart equilibrium") {
        auto [plus, minus] = disc_boundary_pair(Chart::U, -1.0);
        REQUIRE(plus.xi == Catch::Approx(1.0 / std::sqrt(2.0)));
        REQUIRE(plus.eta == Catch::Approx(-1.0 / std::sqrt(2.0)));
        REQUIRE(minus.xi == Catch::Approx(-plus.xi));
    }
    SECTION("radially monotone and injective") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(-5.0, 5.0);
        for (int i = 0; i < 200; ++i) {
            Point p{u(rng), u(rng)}, q{u(rng), u(rng)};
            DiscPoint dp = disc_project(p), dq = disc_project(q);
            REQUIRE(std::hypot(dp.xi, dp.eta) < 1.0);
            double rp = std::hypot(p.x, p.y), rq = std::hypot(q.x, q.y);
            if (rp < rq) REQUIRE(std::hypot(dp.xi, dp.eta) < std::hypot(dq.xi, dq.eta) + 1e-15);
            if (std::hypot(p.x - q.x, p.y - q.y) > 1e-9) {
                REQUIRE((std::abs(dp.xi - dq.xi) > 1e-15 || std::abs(dp.eta - dq.eta) > 1e-15));
            }
        }
    }
}
