#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "phase_sentinel/flow/integrate.hpp"
#include "phase_sentinel/flow/return_map.hpp"
#include "phase_sentinel/flow/sectors.hpp"
#include "phase_sentinel/systems.hpp"

using namespace phase_sentinel;

namespace {

PlanarSystem poly_system(std::initializer_list<std::pair<int, double>> g_terms,
                         std::initializer_list<std::tuple<int, int, double>> f_terms) {
    Poly1 g;
    for (auto [i, v] : g_terms) g.set_coeff(i, v);
    Poly2 f;
    for (auto [i, j, v] : f_terms) f.add_term(i, j, v);
    PlanarSystem s;
    s.g = ScalarField1D(g);
    s.f = ScalarField2D(f);
    return s;
}

const PlanarSystem harmonic = poly_system({{1, 1.0}}, {});
const PlanarSystem damped = poly_system({{1, 1.0}}, {{0, 0, 1.0}});
const PlanarSystem vdp = poly_system({{1, 1.0}}, {{2, 0, 1.0}, {0, 0, -1.0}});
const PlanarSystem eg3 = poly_system({{5, 2.0}}, {{1, 0, 1.0}});
const PlanarSystem eg2 = poly_system({{5, 2.0}, {6, -1.0}}, {{1, 0, 1.0}});

}  // namespace

TEST_CASE("harmonic oscillator closes after one period") {
    IntegrateOptions opts;
    opts.tol = 1e-10;
    opts.t_end = 2.0 * M_PI;
    OrbitTrace tr = integrate(harmonic, {1.0, 0.0}, opts);
    REQUIRE(tr.termination == Termination::TimeLimit);
    REQUIRE(std::hypot(tr.back().x - 1.0, tr.back().y) < 1e-6);
}

TEST_CASE("axis events are located on the axes") {
    IntegrateOptions opts;
    opts.tol = 1e-9;
    opts.t_end = 20.0;
    OrbitTrace tr = integrate(damped, {1.0, 0.0}, opts);
    REQUIRE(tr.events.size() >= 4);
    for (const auto& ev : tr.events) {
        if (ev.kind == EventKind::PosYAxis || ev.kind == EventKind::NegYAxis)
            REQUIRE(std::abs(ev.x) < 1e-10);
        else
            REQUIRE(std::abs(ev.y) < 1e-10);
    }
    // times strictly increase
    for (std::size_t i = 1; i < tr.events.size(); ++i) REQUIRE(tr.events[i].t > tr.events[i - 1].t);
}

TEST_CASE("trace time is strictly monotone") {
    IntegrateOptions opts;
    opts.t_end = 10.0;
    OrbitTrace tr = integrate(vdp, {0.5, 0.0}, opts);
    for (std::size_t i = 1; i < tr.samples.size(); ++i) REQUIRE(tr.samples[i].t > tr.samples[i - 1].t);
}

TEST_CASE("forward-backward reversibility on random smooth systems") {
    std::mt19937_64 rng(7101);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int tested = 0;
    for (int trial = 0; trial < 100; ++trial) {
        PlanarSystem s = poly_system({{1, 0.5 + 0.5 * std::abs(u(rng))}, {3, 0.5 * u(rng)}},
                                     {{0, 0, u(rng)}, {1, 0, u(rng)}, {0, 1, 0.5 * u(rng)}});
        Point p0{0.5 * u(rng), 0.5 * u(rng)};
        IntegrateOptions opts;
        opts.tol = 1e-9;
        opts.t_end = 1.0;
        opts.escape_radius = 50.0;
        OrbitTrace fwd = integrate(s, p0, opts);
        if (fwd.termination != Termination::TimeLimit) continue;
        SystemField base{&s};
        ReversedField<SystemField> rev{base};
        OrbitTrace bwd = integrate_field(rev, {fwd.back().x, fwd.back().y}, opts);
        if (bwd.termination != Termination::TimeLimit) continue;
        ++tested;
        REQUIRE(std::hypot(bwd.back().x - p0.x, bwd.back().y - p0.y) < 1e-6);
    }
    REQUIRE(tested >= 80);
}

TEST_CASE("slow algebraic convergence is reachable through step growth") {
    // the inbound bundle rides y ~ -2 x^4, so x ~ t^(-1/3); the transverse
    // relaxation rate ~x caps the explicit step, which makes radius 1e-3 the
    // practical convergence threshold for this orbit (~1e5 steps)
    IntegrateOptions opts;
    opts.tol = 1e-9;
    opts.t_end = 1e9;
    opts.converge_radius = 1e-3;
    opts.record_samples = false;
    OrbitTrace tr = integrate(eg2, {0.0, 0.31}, opts);
    REQUIRE(tr.termination == Termination::Converged);
    REQUIRE(std::hypot(tr.back().x, tr.back().y) < 1.1e-3);
}

TEST_CASE("return map basics") {
    SECTION("conservative center is the identity") {
        ReturnMapSample s = return_map(harmonic, 1.0, ReturnHalf::Full);
        REQUIRE(s.y1.has_value());
        REQUIRE(*s.y1 == Catch::Approx(1.0).margin(1e-7));
        ReturnMapSample h = return_map(harmonic, 1.0, ReturnHalf::Half);
        REQUIRE(h.y1.has_value());
        REQUIRE(*h.y1 == Catch::Approx(-1.0).margin(1e-7));
    }
    SECTION("linear damping contracts, successive returns decrease") {
        double y = 1.0;
        double prev = y;
        for (int i = 0; i < 3; ++i) {
            ReturnMapSample s = return_map(damped, prev, ReturnHalf::Full);
            REQUIRE(s.y1.has_value());
            REQUIRE(*s.y1 < prev);
            prev = *s.y1;
        }
        // damped oscillator: one revolution takes 2*pi/omega_d with omega_d =
        // sqrt(3)/2, so the full-return decrement is exp(-2*pi/sqrt(3))
        ReturnMapSample s = return_map(damped, 1.0, ReturnHalf::Full);
        REQUIRE(*s.y1 == Catch::Approx(std::exp(-2.0 * M_PI / std::sqrt(3.0))).epsilon(1e-6));
    }
}

TEST_CASE("relaxation oscillator has a cycle near the known amplitude") {
    CycleSearch cfg;
    cfg.y_lo = 0.5;
    cfg.y_hi = 6.0;
    cfg.seeds = 8;
    auto cyc = find_limit_cycle(vdp, cfg);
    REQUIRE(cyc.has_value());
    double amp = 0.0;
    for (const auto& ev : cyc->events)
        if (ev.kind == EventKind::PosXAxis || ev.kind == EventKind::NegXAxis)
            amp = std::max(amp, std::abs(ev.x));
    REQUIRE(amp == Catch::Approx(2.0086).margin(2e-2));
}

TEST_CASE("no cycle for contracting systems") {
    CycleSearch cfg;
    cfg.y_lo = 0.2;
    cfg.y_hi = 5.0;
    cfg.seeds = 6;
    REQUIRE_FALSE(find_limit_cycle(damped, cfg).has_value());
}

TEST_CASE("energy identity") {
    SECTION("conservative flow keeps E constant") {
        IntegrateOptions opts;
        opts.tol = 1e-11;
        opts.t_end = 2.0 * M_PI;
        OrbitTrace tr = integrate(harmonic, {1.0, 0.0}, opts);
        REQUIRE(energy_residual(harmonic, tr) < 1e-8);
        auto energy = [&](const OrbitTrace::Sample& s) { return harmonic.potential(s.x) + 0.5 * s.y * s.y; };
        for (const auto& s : tr.samples) REQUIRE(energy(s) == Catch::Approx(0.5).margin(1e-8));
    }
    SECTION("dissipative flow decreases E off the x-axis") {
        IntegrateOptions opts;
        opts.t_end = 5.0;
        OrbitTrace tr = integrate(damped, {1.0, 0.0}, opts);
        auto energy = [&](const OrbitTrace::Sample& s) { return damped.potential(s.x) + 0.5 * s.y * s.y; };
        for (std::size_t i = 1; i < tr.samples.size(); ++i)
            REQUIRE(energy(tr.samples[i]) <= energy(tr.samples[i - 1]) + 1e-12);
    }
    SECTION("quintic example") {
        IntegrateOptions opts;
        opts.tol = 1e-9;
        opts.t_end = 30.0;
        OrbitTrace tr = integrate(eg3, {0.0, 0.3}, opts);
        REQUIRE(energy_residual(eg3, tr) < 1e-6);
    }
}

TEST_CASE("Lienard reduction") {
    SECTION("quadratic-cubic profile") {
        PlanarSystem s = poly_system({{3, 0.1}}, {{1, 0, -1.0}, {2, 0, 1.0}});
        LienardForm lf = to_lienard(s);
        const Poly1* F = lf.F.poly();
        REQUIRE(F != nullptr);
        REQUIRE(F->coeff(2) == Catch::Approx(-0.5));
        REQUIRE(F->coeff(3) == Catch::Approx(1.0 / 3));
    }
    SECTION("zero profile") {
        LienardForm lf = to_lienard(harmonic);
        REQUIRE(lf.F.poly()->is_zero());
    }
    SECTION("linear profile") {
        PlanarSystem s = poly_system({{1, 1.0}}, {{1, 0, 2.0}});
        LienardForm lf = to_lienard(s);
        REQUIRE(lf.F.poly()->coeff(2) == Catch::Approx(1.0));
    }
    SECTION("y-dependent profile rejects") {
        REQUIRE_THROWS_AS(to_lienard(vdp.f.poly() ? poly_system({{1, 1.0}}, {{0, 1, 1.0}}) : vdp), NotXOnly);
    }
}

TEST_CASE("bounded elliptic certificate") {
    SECTION("root at 1.5") {
        PlanarSystem s = poly_system({{3, 0.1}}, {{1, 0, -1.0}, {2, 0, 1.0}});
        LienardForm lf = to_lienard(s);
        BoundedEllipticResult r = bounded_elliptic_test(lf, 10.0);
        REQUIRE(r.kind == BoundedEllipticKind::Bounded);
        REQUIRE(r.x0 == Catch::Approx(1.5).margin(1e-9));
    }
    SECTION("sign-definite F has no certificate") {
        PlanarSystem s = poly_system({{3, 0.1}}, {{1, 0, 2.0}});  // F = x^2
        LienardForm lf = to_lienard(s);
        REQUIRE(bounded_elliptic_test(lf, 10.0).kind == BoundedEllipticKind::HypothesisUnmet);
    }
    SECTION("flat potential fails the divergence hypothesis") {
        LienardForm lf;
        Opaque1D g;
        g.fn = [](double x) { return x / ((1.0 + x * x) * (1.0 + x * x)); };
        lf.g = ScalarField1D(g);
        lf.F = ScalarField1D(Poly1{0.0, 0.0, -0.5, 1.0 / 3});
        REQUIRE(bounded_elliptic_test(lf, 10.0).kind == BoundedEllipticKind::DivergenceUnmet);
    }
}

TEST_CASE("radial bump is C2 with the declared plateau") {
    REQUIRE(radial_bump(0.5) == 1.0);
    REQUIRE(radial_bump(1.0) == 1.0);
    REQUIRE(radial_bump(2.0) == 0.0);
    REQUIRE(radial_bump(3.0) == 0.0);
    REQUIRE(radial_bump(1.5) == Catch::Approx(0.5));
    // first and second derivatives vanish at the junctions
    auto d1 = [](double r) { return (radial_bump(r + 1e-5) - radial_bump(r - 1e-5)) / 2e-5; };
    auto d2 = [](double r) {
        return (radial_bump(r + 1e-4) - 2.0 * radial_bump(r) + radial_bump(r - 1e-4)) / 1e-8;
    };
    for (double r : {1.0, 2.0}) {
        REQUIRE(std::abs(d1(r)) < 1e-8);
        REQUIRE(std::abs(d2(r)) < 1e-3);
    }
    // monotone decreasing on the blend
    for (double r = 1.0; r < 2.0; r += 0.05) REQUIRE(radial_bump(r + 0.05) <= radial_bump(r));
}

TEST_CASE("perturbed bump system keeps its sector structure") {
    // asymmetric perturbation of the cubic with two parabolic sectors
    PlanarSystem s = bump_cubic_system(0.05);
    REQUIRE_FALSE(is_symmetric(s));
    SectorSummary probe = sector_probe(s, 0.5);
    REQUIRE(probe.elliptic == 1);
    REQUIRE(probe.hyperbolic == 1);
    REQUIRE(probe.parabolic == 2);
}

TEST_CASE("repelling cycle around the off-origin equilibrium") {
    PlanarSystem s = sawtooth_system(0.0, -1.05);
    CycleSearch cfg;
    cfg.center = {1.0, 0.0};
    cfg.reversed = true;
    cfg.y_lo = 0.02;
    cfg.y_hi = 0.8;
    cfg.seeds = 12;
    auto cycle = find_limit_cycle(s, cfg);
    REQUIRE(cycle.has_value());
    // the cycle encircles (1,0), not the origin
    double min_x = kInf, max_x = -kInf;
    for (const auto& p : cycle->samples) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
    }
    REQUIRE(min_x > 0.0);
    REQUIRE(max_x > 1.0);
    // no cycle is found around the origin itself
    CycleSearch origin_cfg;
    origin_cfg.y_lo = 0.05;
    origin_cfg.y_hi = 0.45;
    origin_cfg.seeds = 8;
    REQUIRE_FALSE(find_limit_cycle(s, origin_cfg).has_value());
}

TEST_CASE("sector probe on the symmetric quintic") {
    // the maximal homoclinic loop of this system tops out at y = 0.1753 and
    // reaches x = 0.4633, so 0.15 is a radius where the circle meets all sectors
    SectorSummary s = sector_probe(eg3, 0.15);
    REQUIRE(s.confidence == SectorConfidence::ExactBySymmetry);
    REQUIRE(s.elliptic == 1);
    REQUIRE(s.hyperbolic == 1);
    REQUIRE(s.parabolic == 0);
}
