#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "phase_sentinel/core/parse.hpp"
#include "phase_sentinel/core/series.hpp"
#include "phase_sentinel/core/symmetry.hpp"
#include "phase_sentinel/core/system.hpp"
#include "phase_sentinel/num/quad.hpp"
#include "phase_sentinel/num/roots.hpp"

using namespace phase_sentinel;

namespace {

PlanarSystem make_poly_system(std::initializer_list<std::pair<int, double>> g_terms,
                              std::initializer_list<std::tuple<int, int, double>> f_terms,
                              double alpha = -kInf, double beta = kInf) {
    Poly1 g;
    for (auto [i, v] : g_terms) g.set_coeff(i, v);
    Poly2 f;
    for (auto [i, j, v] : f_terms) f.add_term(i, j, v);
    PlanarSystem s;
    s.g = ScalarField1D(g, alpha, beta);
    s.f = ScalarField2D(f);
    s.alpha = alpha;
    s.beta = beta;
    return s;
}

PlanarSystem eg3_system() {
    // x' = y, y' = -2x^5 - xy
    return make_poly_system({{5, 2.0}}, {{1, 0, 1.0}});
}

}  // namespace

TEST_CASE("polynomial evaluation and calculus") {
    Poly1 p{1.0, 2.0, 3.0};  // 1 + 2x + 3x^2
    REQUIRE(p.eval(2.0) == Catch::Approx(17.0));
    REQUIRE(p.derivative().eval(2.0) == Catch::Approx(14.0));
    REQUIRE(p.antiderivative().eval(1.0) == Catch::Approx(1.0 + 1.0 + 1.0));
    REQUIRE(p.degree() == 2);

    Poly2 q;
    q.add_term(1, 1, -5.0);
    q.add_term(0, 2, 1.0);
    REQUIRE(q.eval(2.0, 3.0) == Catch::Approx(-30.0 + 9.0));
    REQUIRE(q.dx().eval(2.0, 3.0) == Catch::Approx(-15.0));
    REQUIRE(q.dy().eval(2.0, 3.0) == Catch::Approx(-10.0 + 6.0));
}

TEST_CASE("Poly2 shift and compose") {
    Poly2 q;  // (x+y)^2 = x^2 + 2xy + y^2
    q.add_term(2, 0, 1.0);
    q.add_term(1, 1, 2.0);
    q.add_term(0, 2, 1.0);
    Poly2 sh = q.shifted(1.0, -1.0);
    for (double x : {-0.7, 0.3, 2.0})
        for (double y : {-1.2, 0.5})
            REQUIRE(sh.eval(x, y) == Catch::Approx(q.eval(x + 1.0, y - 1.0)).margin(1e-12));

    Poly1 s{0.0, 0.0, 1.0};  // y = x^2
    Poly1 comp = q.compose_y(s, 6);
    // (x + x^2)^2 = x^2 + 2x^3 + x^4
    REQUIRE(comp.coeff(2) == Catch::Approx(1.0));
    REQUIRE(comp.coeff(3) == Catch::Approx(2.0));
    REQUIRE(comp.coeff(4) == Catch::Approx(1.0));
}

TEST_CASE("real root isolation matches brute-force sign scan") {
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> coeff(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        Poly1 p;
        int deg = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i <= deg; ++i) p.set_coeff(i, coeff(rng));
        if (p.degree() < 1) continue;
        auto roots = poly_real_roots(p);
        double b = cauchy_root_bound(p);
        int scan = 0;
        const int n = 200000;
        double prev = p.eval(-b);
        for (int i = 1; i <= n; ++i) {
            double x = -b + 2.0 * b * i / n;
            double v = p.eval(x);
            if (prev != 0.0 && v != 0.0 && (prev < 0.0) != (v < 0.0)) ++scan;
            if (v != 0.0) prev = v;
        }
        REQUIRE(static_cast<int>(roots.size()) >= scan);
        for (double r : roots) {
            // residual scaled by the evaluation condition sum |c_i| |r|^i
            double cond = 0.0;
            for (int i = 0; i <= p.degree(); ++i) cond += std::abs(p.coeff(i)) * std::pow(std::abs(r), i);
            REQUIRE(std::abs(p.eval(r)) < 1e-9 * cond + 1e-9);
        }
    }
}

TEST_CASE("adaptive quadrature") {
    REQUIRE(integrate_1d([](double x) { return x * x; }, 0.0, 1.0) == Catch::Approx(1.0 / 3).epsilon(1e-12));
    REQUIRE(integrate_1d([](double x) { return std::sin(x); }, 0.0, M_PI) == Catch::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("eval_field on reference points") {
    SECTION("harmonic oscillator") {
        PlanarSystem s = make_poly_system({{1, 1.0}}, {});
        Velocity v = eval_field(s, {1.0, 0.0});
        REQUIRE(v.vx == 0.0);
        REQUIRE(v.vy == -1.0);
    }
    SECTION("x' = y, y' = -2x^5 - xy at (1,1)") {
        Velocity v = eval_field(eg3_system(), {1.0, 1.0});
        REQUIRE(v.vx == 1.0);
        REQUIRE(v.vy == -3.0);
    }
    SECTION("origin is an equilibrium") {
        Velocity v = eval_field(eg3_system(), {0.0, 0.0});
        REQUIRE(v.vx == 0.0);
        REQUIRE(v.vy == 0.0);
    }
    SECTION("strip boundary") {
        PlanarSystem s = make_poly_system({{1, 1.0}}, {}, -0.5, 2.0);
        REQUIRE_THROWS_AS(eval_field(s, {3.0, 0.0}), DomainError);
    }
    SECTION("determinism") {
        PlanarSystem s = eg3_system();
        Velocity a = eval_field(s, {0.3, -0.7});
        Velocity b = eval_field(s, {0.3, -0.7});
        REQUIRE(a.vx == b.vx);
        REQUIRE(a.vy == b.vy);
    }
}

TEST_CASE("series extraction at the origin") {
    SECTION("quintic with linear damping profile") {
        SeriesData sd = series_at_origin(eg3_system());
        REQUIRE(sd.a == 0.0);
        REQUIRE(sd.b == 0.0);
        REQUIRE(sd.a_k == 2.0);
        REQUIRE(sd.k == 5);
        REQUIRE(sd.b_n.value() == 1.0);
        REQUIRE(sd.n.value() == 1);
        REQUIRE_FALSE(sd.y_remainder_present);
    }
    SECTION("hyperbolic case") {
        PlanarSystem s = make_poly_system({{1, 1.0}, {3, 1.0}}, {{0, 0, 1.0}});
        SeriesData sd = series_at_origin(s);
        REQUIRE(sd.a == 1.0);
        REQUIRE(sd.b == 1.0);
        REQUIRE(sd.k == 1);
    }
    SECTION("cubic restoring with quadratic profile") {
        PlanarSystem s = make_poly_system({{3, 0.1}}, {{1, 0, -1.0}, {2, 0, 1.0}});
        SeriesData sd = series_at_origin(s);
        REQUIRE(sd.a == 0.0);
        REQUIRE(sd.b == 0.0);
        REQUIRE(sd.a_k == Catch::Approx(0.1));
        REQUIRE(sd.k == 3);
        REQUIRE(sd.b_n.value() == -1.0);
        REQUIRE(sd.n.value() == 1);
    }
    SECTION("not an equilibrium") {
        Poly1 g{1.0, 1.0};  // g(0) = 1
        PlanarSystem s;
        s.g = ScalarField1D(g);
        REQUIRE_THROWS_AS(series_at_origin(s), NotAnEquilibrium);
    }
    SECTION("opaque inputs are refused") {
        PlanarSystem s;
        Opaque1D og;
        og.fn = [](double x) { return std::sin(x); };
        s.g = ScalarField1D(og);
        REQUIRE_THROWS_AS(series_at_origin(s), OrderExhausted);
    }
}

TEST_CASE("system document parsing") {
    SECTION("cubic family document") {
        auto ps = parse_system(std::string(R"({"family":"sys61","lambda":1,"mu":1,"a":1,"b":1,"c":1})"));
        REQUIRE(ps.cubic.has_value());
        REQUIRE(ps.cubic->family == Family::sys61);
        REQUIRE(ps.cubic->b == 1.0);
        Velocity v = ps.system.eval(1.0, 1.0);
        // y' = -x - y - x^3 - x^2 y - x y^2 - y^3 at (1,1) = -6
        REQUIRE(v.vy == Catch::Approx(-6.0));
    }
    SECTION("polynomial document") {
        auto ps = parse_system(std::string(R"({"g":{"poly":[0,0,0,0,2]},"f":{"poly2d":{"1,0":1}}})"));
        REQUIRE_FALSE(ps.cubic.has_value());
        Velocity v = ps.system.eval(1.0, 1.0);
        REQUIRE(v.vy == Catch::Approx(-3.0));
    }
    SECTION("region constraint violations reject") {
        REQUIRE_THROWS_AS(parse_system(std::string(R"({"family":"sys61","lambda":1,"mu":1,"a":1,"b":1,"c":-1})")),
                          ParseError);
        REQUIRE_THROWS_AS(parse_system(std::string(R"({"family":"sys61","lambda":1,"mu":1,"a":1,"b":0,"c":1})")),
                          ParseError);
    }
    SECTION("malformed document") {
        REQUIRE_THROWS_AS(parse_system(std::string("{nope")), ParseError);
        REQUIRE_THROWS_AS(parse_system(std::string(R"({"g":{"poly":[1]}})")), ParseError);
    }
    SECTION("round trip") {
        std::string doc = R"({"g":{"poly":[0.5,0,1.25]},"f":{"poly2d":{"0,0":2,"1,1":-0.5}},"alpha":-2,"beta":"inf"})";
        auto ps1 = parse_system(doc);
        auto ps2 = parse_system(serialize_system(ps1).dump());
        REQUIRE(ps1.system.g.poly()->c == ps2.system.g.poly()->c);
        REQUIRE(ps1.system.f.poly()->m == ps2.system.f.poly()->m);
        REQUIRE(ps1.system.alpha == ps2.system.alpha);
        REQUIRE(ps1.system.beta == ps2.system.beta);
    }
    SECTION("general family document carries its scaling parameters") {
        auto ps = parse_system(std::string(R"({"family":"general","lambda":2,"kappa":3,"mu":1,"a":1,"b":1,"c":1})"));
        REQUIRE(ps.cubic->family == Family::general);
        REQUIRE(ps.cubic->kappa == 3.0);
        Velocity v = ps.system.eval(1.0, 0.0);
        REQUIRE(v.vy == Catch::Approx(-2.0 - 3.0));  // -lambda x - kappa x^3
    }
    SECTION("piecewise document") {
        std::string doc = R"({"g":{"piecewise":[["-inf",-0.5,1,1],[-0.5,-0.25,-3,-1],[-0.25,0.25,1,0],[0.25,0.5,-3,1],[0.5,"inf",1,-1]]},"f":{"poly2d":{"0,0":0}}})";
        auto ps = parse_system(doc);
        REQUIRE(ps.system.g.eval(0.0) == 0.0);
        REQUIRE(ps.system.g.eval(1.0) == Catch::Approx(0.0));
        REQUIRE(ps.system.g.eval(0.3) == Catch::Approx(0.1));
        REQUIRE(ps.system.g.eval(-0.3) == Catch::Approx(-0.1));
    }
}

TEST_CASE("sign condition x g(x) > 0 on sampled grids") {
    auto check = [](const PlanarSystem& s) {
        for (double x : log_biased_grid(std::min(s.beta, 5.0) * 0.99, 101)) {
            REQUIRE(x * s.g.eval(x) > 0.0);
            REQUIRE(-x * s.g.eval(-x) > 0.0);
        }
    };
    check(eg3_system());
    check(make_poly_system({{1, 1.0}, {3, 1.0}}, {}));
}

TEST_CASE("symmetry detection") {
    REQUIRE(is_symmetric(eg3_system()));  // g odd, f odd in x
    PlanarSystem s = make_poly_system({{5, -2.0}, {6, 1.0}}, {{1, 0, -1.0}});
    REQUIRE_FALSE(g_is_odd(s));
    PlanarSystem t = make_poly_system({{1, 1.0}}, {{0, 0, 1.0}});
    REQUIRE_FALSE(f_even_x_part_zero(t));
}
