#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "scarf/analytic.hpp"
#include "scarf/error.hpp"
#include "scarf/numerics.hpp"

using namespace scarf;
using namespace scarf::numerics;
using analytic::Branch;

TEST_CASE("grid validation") {
    Grid g;
    CHECK_NOTHROW(g.validate());
    CHECK(g.node_count() == 30001);
    CHECK(g.match_index() == 15000);

    Grid bad_match = g;
    bad_match.x_match = 20.0;
    CHECK_THROWS_AS(bad_match.validate(), std::invalid_argument);
    Grid bad_step = g;
    bad_step.h = 0.0;
    CHECK_THROWS_AS(bad_step.validate(), std::invalid_argument);
    Grid uneven = g;
    uneven.h = 0.0007;
    CHECK_THROWS_AS(uneven.validate(), std::invalid_argument);
}

TEST_CASE("quadrature") {
    // Simpson is exact for cubics.
    const double h = 0.1;
    std::vector<double> cubic;
    for (int i = 0; i <= 20; ++i) {
        const double x = i * h;
        cubic.push_back(x * x * x - x);
    }
    CHECK(quadrature(cubic, h).real() == doctest::Approx(4.0 - 2.0).epsilon(1e-13));

    // Odd interval count: sech^2 over [-15, 15].
    std::vector<cplx> sech2;
    const double k = 30.0 / 2999;
    for (int i = 0; i < 3000; ++i) sech2.push_back(std::pow(1.0 / std::cosh(-15.0 + i * k), 2));
    CHECK(std::abs(quadrature(sech2, k) - 2.0 * std::tanh(15.0)) < 1e-5);
}

TEST_CASE("propagation reproduces the hermitian ground state") {
    const auto p = PotentialParams::make(20.0, 0.0);
    Grid g;
    const auto u = g.uniform();
    const auto psi = numerov_propagate(p, -16.0, u, Direction::LeftToRight).scaled_values();
    // Compare shapes on the left half, where the decaying seed is accurate.
    const std::size_t ref = 14000;
    const cplx c = std::pow(1.0 / std::cosh(u.x(ref)), 4.0) / psi[ref];
    double worst = 0.0;
    for (std::size_t i = 10000; i <= 15000; i += 50) {
        const double exact = std::pow(1.0 / std::cosh(u.x(i)), 4.0);
        worst = std::max(worst, std::abs(c * psi[i] - exact) / exact);
    }
    CHECK(worst < 1e-7);
    CHECK_THROWS_AS(numerov_propagate(p, 2.0, u, Direction::LeftToRight), std::invalid_argument);
}

TEST_CASE("explicit seeds and rescaling") {
    const auto p = PotentialParams::make(20.0, 17.0);
    const UniformGrid u{-15.0, 1e-3, 30001};
    const auto psi = numerov_propagate(p, {-0.3, 0.0}, u, Direction::RightToLeft, Seed::explicit_values(1.0, 1.0));
    CHECK(psi.values.size() == u.count);
    CHECK(psi.values.back() == cplx(1.0, 0.0));
    for (const auto& v : psi.values) CHECK(std::isfinite(std::abs(v)));
}

TEST_CASE("shooting hermitian levels") {
    const auto p = PotentialParams::make(20.0, 0.0);
    for (double e : {-16.0, -9.0, -4.0, -1.0}) {
        const auto r = shoot_eigenvalue(p, e + 0.2);
        CHECK(r.converged);
        CHECK(std::abs(r.energy - e) < 1e-8);
        CHECK(r.multiplicity == 1);
    }
}

TEST_CASE("shooting broken-phase pair") {
    const auto p = PotentialParams::make(20.0, 25.0);
    const cplx e = analytic::level_energy(p, 1, Branch::Plus);
    const auto r = shoot_eigenvalue(p, e + cplx(0.1, 0.1));
    CHECK(std::abs(r.energy - e) < 1e-8);
    const auto c = shoot_eigenvalue(p, std::conj(e) + cplx(0.1, -0.1));
    CHECK(std::abs(c.energy - std::conj(e)) < 1e-8);
}

TEST_CASE("shooting at a crossing reports the merged double root") {
    const auto p = PotentialParams::make(20.0, 16.25);
    const cplx e = analytic::level_energy(p, 2, Branch::Plus);
    const auto r = shoot_eigenvalue(p, e * 1.03);
    CHECK(r.multiplicity == 2);
    CHECK(std::abs(r.energy - e) < 1e-7);
    ShootingOptions raw;
    raw.resolve_clusters = false;
    CHECK(shoot_eigenvalue(p, e * 1.03, {}, raw).multiplicity == 1);
}

TEST_CASE("shooting errors") {
    const auto p = PotentialParams::make(20.0, 17.0);
    try {
        shoot_eigenvalue(p, {3.0, 0.0});
        FAIL("expected a window error");
    } catch (const SolverError& e) {
        CHECK(e.kind() == SolverError::Kind::DivergedOutOfWindow);
    }
    ShootingOptions few;
    few.max_iterations = 2;
    few.resolve_clusters = false;
    try {
        shoot_eigenvalue(p, {-5.0, 0.0}, {}, few);
        FAIL("expected non-convergence");
    } catch (const SolverError& e) {
        CHECK(e.kind() == SolverError::Kind::MaxIterations);
    }
}

TEST_CASE("matching function is holomorphic") {
    // Cauchy-Riemann by finite differences at a generic complex energy.
    const auto p = PotentialParams::make(20.0, 17.0);
    Grid g;
    g.h = 5e-3;
    const cplx e(-3.1, 0.4);
    const double d = 1e-4;
    const cplx fx = (matching_function(p, e + d, g).value - matching_function(p, e - d, g).value) / (2 * d);
    const cplx fy = (matching_function(p, e + cplx(0, d), g).value - matching_function(p, e - cplx(0, d), g).value) /
                    (2 * d);
    CHECK(std::abs(fy - cplx(0, 1) * fx) < 1e-5 * std::abs(fx));
}

TEST_CASE("shot eigenstate is proportional to the closed form") {
    const auto p = PotentialParams::make(20.0, 17.0);
    const cplx e = analytic::level_energy(p, 1, Branch::Minus);
    Grid g;
    g.x_match = 0.5;
    const auto r = shoot_eigenvalue(p, e + 0.05, g);
    const auto shot = shot_eigenstate(p, r.energy, g).scaled_values();
    const auto u = g.uniform();
    const cplx c = analytic::eigenstate(p, 1, Branch::Minus, u.x(15000)) / shot[15000];
    double worst = 0.0, peak = 0.0;
    for (std::size_t i = 3000; i < u.count - 3000; i += 100) {
        const cplx exact = analytic::eigenstate(p, 1, Branch::Minus, u.x(i));
        worst = std::max(worst, std::abs(c * shot[i] - exact));
        peak = std::max(peak, std::abs(exact));
    }
    CHECK(worst < 1e-6 * peak);
}

TEST_CASE("shoot_levels merges repeated roots") {
    const auto p = PotentialParams::make(20.0, 0.0);
    const cplx guesses[] = {-15.8, -16.3, -9.2};
    const auto levels = shoot_levels(p, guesses);
    REQUIRE(levels.size() == 2);
    CHECK(levels[0].multiplicity == 2);
    CHECK(std::abs(levels[1].energy + 9.0) < 1e-8);
}

TEST_CASE("curve continuation") {
    // Through the coalescence into the broken phase.
    const auto curve = trace_curve(20.0, 0, Branch::Plus, 19.25, 21.25, 9);
    REQUIRE(curve.size() == 9);
    for (const auto& pt : curve) {
        CAPTURE(pt.v2);
        REQUIRE(pt.exists);
        const auto p = PotentialParams::make(20.0, pt.v2);
        CHECK(std::abs(pt.energy - analytic::level_energy(p, 0, Branch::Plus)) < 1e-6);
    }
    CHECK(curve[4].energy.real() == doctest::Approx(-7.19).epsilon(1e-3));
    CHECK(curve.back().phase == Phase::Broken);
    CHECK(curve.back().energy.imag() < 0.0);

    const auto minus = trace_curve(20.0, 0, Branch::Minus, 0.0, 10.0, 11);
    for (const auto& pt : minus) CHECK(pt.exists == (pt.v2 > 4.472));
    for (const auto& pt : minus)
        if (!pt.exists) CHECK(std::isnan(pt.energy.real()));

    for (const auto& pt : trace_curve(20.0, 3, Branch::Minus, 0.0, 25.0, 6)) CHECK_FALSE(pt.exists);
    CHECK_THROWS_AS(trace_curve(20.0, 0, Branch::Plus, 0.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("jost coefficient vanishes at bound states") {
    const auto p = PotentialParams::make(20.0, 17.0);
    for (const auto& l : analytic::spectrum(p)) {
        const double at = std::abs(jost_a(p, l.energy));
        const double off = std::abs(jost_a(p, l.energy.real() * 0.9));
        CHECK(at < 1e-6 * off);
    }
}

TEST_CASE("pole scan finds the hermitian levels") {
    const auto p = PotentialParams::make(20.0, 0.0);
    PoleScanOptions o;
    o.e_min = -17.0;
    o.points = 800;
    const auto poles = scan_poles(p, o);
    REQUIRE(poles.size() == 4);
    const double want[] = {-16.0, -9.0, -4.0, -1.0};
    for (int i = 0; i < 4; ++i) CHECK(std::abs(poles[i].energy - want[i]) < 1e-4);
}

TEST_CASE("wronskian test") {
    const auto p = PotentialParams::make(20.0, 17.0);
    const UniformGrid u{-15.0, 1e-3, 30001};
    const auto a = numerov_propagate(p, -5.0, u, Direction::LeftToRight);
    const auto b = numerov_propagate(p, -5.0, u, Direction::RightToLeft);
    const auto rep = wronskian_test(a, b);
    CHECK(rep.constancy < 1e-8);
    CHECK(rep.w_max > 1e-3 * rep.w_scale); // not an eigenvalue: the solutions are independent

    const UniformGrid other{-15.0, 2e-3, 15001};
    const auto c = numerov_propagate(p, -5.0, other, Direction::LeftToRight);
    CHECK_THROWS_AS(wronskian_test(a, c), std::invalid_argument);
}
