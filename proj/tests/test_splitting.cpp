/// @file test_splitting.cpp
/// @brief Split and unsplit steps, compositional oracle and the run driver.

#include "helpers.hpp"

#include <mlsw/analysis.hpp>
#include <mlsw/baroclinic.hpp>
#include <mlsw/barotropic.hpp>
#include <mlsw/physics.hpp>
#include <mlsw/scenarios.hpp>
#include <mlsw/splitting.hpp>

#include <doctest.h>

#include <cmath>

using namespace mlsw;
using testing::periodic_line;

namespace {

SimState lake(const Grid& g, int n) {
    SimState s = make_state(g, n);
    for_each_cell(g, [&](int i, int j) {
        s.zb(i, j) = 0.4 * std::exp(-20.0 * (g.xc(i) - 0.5) * (g.xc(i) - 0.5));
        s.h(i, j) = 1.0 - s.zb(i, j);
        for (int a = 0; a < n; ++a) s.T[static_cast<std::size_t>(a)](i, j) = a;
    });
    apply_boundary(g, s);
    return s;
}

double max_diff(const Grid& g, const Field& a, const Field& b) {
    double m = 0.0;
    for_each_cell(g, [&](int i, int j) { m = std::max(m, std::abs(a(i, j) - b(i, j))); });
    return m;
}

}  // namespace

TEST_CASE("lake at rest is a fixed point of both schemes") {
    const Grid g = Grid::line(30, 0.0, 1.0, Boundary::wall, Boundary::wall);
    const LayerConfig l = LayerConfig::uniform(4);
    for (SchemeKind kind : {SchemeKind::split, SchemeKind::unsplit}) {
        SchemeConfig sc;
        sc.kind = kind;
        const Model m(g, l, sc, PhysicsConfig{});
        SimState s = lake(g, 4);
        const SimState s0 = s;
        for (int k = 0; k < 20; ++k) step(s, m, 0.01);
        CHECK(max_diff(g, s.h, s0.h) <= 1e-13);
        for (const auto& u : s.u) CHECK(max_diff(g, u, Field(g)) <= 1e-13);
    }
}

TEST_CASE("barotropic data stays barotropic under the split step") {
    const Grid g = Grid::line(50, 0.0, 1.0, Boundary::wall, Boundary::wall);
    const LayerConfig l = LayerConfig::uniform(5);
    const Model m(g, l, SchemeConfig{}, PhysicsConfig{});
    SimState s = make_state(g, 5);
    for_each_cell(g, [&](int i, int j) {
        s.h(i, j) = g.xc(i) < 0.5 ? 2.0 : 1.0;
        for (auto& u : s.u) u(i, j) = 0.3 * std::sin(3.0 * g.xc(i));
    });
    apply_boundary(g, s);
    for (int k = 0; k < 30; ++k) {
        split_step(s, m);
        CHECK(barotropic_defect(g, s, l) <= 1e-12);
    }
}

TEST_CASE("split step equals the manual composition of its stages") {
    const Grid g = periodic_line(3, 0.2);
    const LayerConfig l({0.4, 0.6});
    const Model m(g, l, SchemeConfig{}, PhysicsConfig{});
    SimState s = make_state(g, 2);
    const double h[3] = {1.0, 1.3, 0.9}, u1[3] = {0.2, -0.1, 0.4}, u2[3] = {-0.3, 0.5, 0.0};
    for (int i = 0; i < 3; ++i) {
        s.h(i) = h[i];
        s.u[0](i) = u1[i];
        s.u[1](i) = u2[i];
        s.T[0](i) = i;
        s.T[1](i) = 2.0 - i;
    }
    apply_boundary(g, s);

    SimState manual = s;
    const double dt = baroclinic_dt(g, manual, l, m.scheme);
    const PredictedState p = prediction_step(g, manual, l, m.scheme.flux, dt);
    const ExchangeField ex = exchange_terms(g, p, l, dt, m.scheme.dry_height);
    apply_correction(g, p, ex, l, dt, m.scheme.correction, m.scheme.dry_height, manual);
    barotropic_loop(m, manual, dt);
    manual.t += dt;

    const StepReport r = split_step(s, m);
    CHECK(r.dt == dt);
    CHECK(s.t == manual.t);
    for (int i = 0; i < 3; ++i) {
        CHECK(s.h(i) == manual.h(i));
        for (std::size_t a = 0; a < 2; ++a) {
            CHECK(s.u[a](i) == manual.u[a](i));
            CHECK(s.T[a](i) == manual.T[a](i));
        }
    }
}

TEST_CASE("single-layer unsplit step is one shallow-water substep") {
    const Grid g = periodic_line(20, 0.05);
    std::mt19937 rng(4);
    SimState s = testing::random_state(g, 1, rng);
    SchemeConfig sc;
    sc.kind = SchemeKind::unsplit;
    const Model m(g, LayerConfig::uniform(1), sc, PhysicsConfig{});
    BarotropicFields b = barotropic_fields(g, s, m.layers);
    fill_barotropic_ghosts(g, b);
    const StepReport r = unsplit_step(s, m);
    barotropic_substep(g, b, s.zb, sc.gravity, r.dt, sc.dry_height);
    for (int i = 0; i < 20; ++i) {
        CHECK(s.h(i) == doctest::Approx(b.h(i)).epsilon(1e-13));
        CHECK(s.h(i) * s.u[0](i) == doctest::Approx(b.hu(i)).epsilon(1e-13).scale(1.0));
    }
}

TEST_CASE("unsplit and split errors are of the same order on the stationary Euler flow") {
    ScenarioSpec spec;
    spec.name = "euler";
    spec.nx = 100;
    spec.layers = 10;
    spec.t_final = 1.0;
    double err[2];
    for (int k = 0; k < 2; ++k) {
        spec.scheme["kind"] = k == 0 ? "split" : "unsplit";
        Scenario sc = build_scenario(spec);
        RunOptions o;
        o.t_final = sc.t_final;
        run(sc.model, sc.state, o);
        err[k] = euler_errors(sc, sc.state).h;
    }
    CHECK(err[0] > 0.0);
    CHECK(err[1] > 0.0);
    CHECK(err[0] / err[1] < 10.0);
    CHECK(err[1] / err[0] < 10.0);
}

TEST_CASE("run driver snapshots and determinism") {
    ScenarioSpec spec;
    spec.name = "dam_break";
    spec.nx = 40;
    spec.layers = 3;
    Scenario sc = build_scenario(spec);

    SUBCASE("zero final time emits only the initial snapshot") {
        int count = 0;
        RunOptions o;
        o.t_final = 0.0;
        const RunResult r = run(sc.model, sc.state, o, [&](const SimState&) { ++count; });
        CHECK(count == 1);
        CHECK(r.totals.steps == 0);
    }
    SUBCASE("output times are hit exactly") {
        std::vector<double> times;
        RunOptions o;
        o.t_final = 0.05;
        o.output_interval = 0.02;
        run(sc.model, sc.state, o, [&](const SimState& s) { times.push_back(s.t); });
        REQUIRE(times.size() == 4);
        CHECK(times[1] == doctest::Approx(0.02).epsilon(1e-12));
        CHECK(times[2] == doctest::Approx(0.04).epsilon(1e-12));
        CHECK(times[3] == doctest::Approx(0.05).epsilon(1e-12));
    }
    SUBCASE("identical runs are bitwise identical") {
        Scenario other = build_scenario(spec);
        RunOptions o;
        o.t_final = 0.05;
        run(sc.model, sc.state, o);
        run(other.model, other.state, o);
        CHECK(sc.state.h == other.state.h);
        CHECK(sc.state.u == other.state.u);
        CHECK(sc.state.t == other.state.t);
    }
}

TEST_CASE("subcycling off flushes after every substep and keeps the invariants") {
    ScenarioSpec spec;
    spec.name = "euler";
    spec.nx = 40;
    spec.layers = 4;
    spec.t_final = 2.0;
    spec.scheme["subcycling"] = "off";
    Scenario sc = build_scenario(spec);
    RunOptions o;
    o.t_final = sc.t_final;
    o.monitor = true;
    const RunResult r = run(sc.model, sc.state, o);
    CHECK(r.totals.steps > 0);
    CHECK(r.invariants.deviation_sum <= 1e-11);
    CHECK(r.invariants.worst_max_principle() <= 1e-10);
}
