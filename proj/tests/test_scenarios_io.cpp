/// @file test_scenarios_io.cpp
/// @brief Scenario generators, configuration text and snapshot files.

#include "helpers.hpp"

#include <mlsw/analysis.hpp>
#include <mlsw/config.hpp>
#include <mlsw/io.hpp>
#include <mlsw/scenarios.hpp>

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

using namespace mlsw;

namespace {

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("mlsw_test_" + name);
}

ScenarioSpec named(const std::string& name) {
    ScenarioSpec s;
    s.name = name;
    return s;
}

}  // namespace

TEST_CASE("stationary Euler solution values") {
    const EulerSolution e;
    CHECK(e.h(0.0) == doctest::Approx(1.0));
    CHECK(e.zb(0.0) == doctest::Approx(0.99928).epsilon(1e-5));
    CHECK(e.zb(0.0) == doctest::Approx(1.0 - 0.01 / (2.0 * 9.81 * std::sin(1.0) * std::sin(1.0))));
    CHECK(e.u(0.0, e.zb(0.0)) == doctest::Approx(0.11884).epsilon(1e-4));

    // layer averages integrate the profile: their weighted sum equals α / h
    const LayerConfig l = LayerConfig::uniform(7);
    for (double x : {-2.0, 0.0, 0.7}) {
        double q = 0.0;
        for (int a = 0; a < 7; ++a) q += l[a] * e.layer_velocity(x, a, l);
        CHECK(q * e.h(x) == doctest::Approx(e.alpha).epsilon(1e-10));
    }

    EulerSolution rest;
    rest.alpha = 0.0;
    CHECK(rest.u(0.3, 0.5) == 0.0);
    CHECK(rest.zb(0.3) + rest.h(0.3) == doctest::Approx(rest.zbar));
}

TEST_CASE("Euler scenario initial state") {
    const Scenario sc = build_scenario(named("euler"));
    const Grid& g = sc.model.grid;
    CHECK(g.nx == 100);
    CHECK(sc.model.layers.size() == 10);
    CHECK(g.x0 == -5.0);
    CHECK(g.x_max() == doctest::Approx(5.0));
    CHECK(sc.t_final == 60.0);
    CHECK(deviation_sum_residual(g, sc.state, sc.model.layers) <= 1e-15);
    const auto [lo, hi] = tracer_bounds(g, sc.state);
    CHECK(lo == 0.0);
    CHECK(hi == 1.0);
    CHECK(euler_errors(sc, sc.state).h == 0.0);
}

TEST_CASE("wind cavity initial profile") {
    const Scenario sc = build_scenario(named("wind_cavity"));
    const Grid& g = sc.model.grid;
    CHECK(g.x_max() == doctest::Approx(3.0));
    CHECK(sc.model.physics.nu == 0.003);
    CHECK(sc.model.physics.wind_u == 6.0);
    CHECK(sc.model.scheme.correction == Correction::explicit_update);
    for (int a = 0; a < 10; ++a) CHECK(sc.state.T[static_cast<std::size_t>(a)](0) == (a < 5 ? 8.0 : 25.0));
    const auto [lo, hi] = tracer_bounds(g, sc.state);
    CHECK(lo == 8.0);
    CHECK(hi == 25.0);
    CHECK(interior_max(g, mean_velocity(sc.state.u, sc.model.layers)) == 0.0);
}

TEST_CASE("volcano topography") {
    CHECK(volcano_bottom(2.0, 1.0) == doctest::Approx(0.2));
    CHECK(volcano_depth(2.0, 1.0) == doctest::Approx(0.25));
    CHECK(volcano_bottom(0.0, 0.0) == doctest::Approx(0.8 * std::exp(-12.0)));
    CHECK(volcano_bottom(0.0, 0.0) == doctest::Approx(4.91e-6).epsilon(1e-3));
    CHECK(volcano_depth(0.0, 0.0) == doctest::Approx(0.29999).epsilon(1e-5));
    // crater rim: r = ln(8/5) along y = 1
    const double x = 2.0 + std::sqrt(std::log(1.6) / 2.0);
    CHECK(volcano_bottom(x, 1.0) == doctest::Approx(0.5));
    CHECK(volcano_bottom(x + 1e-9, 1.0) == doctest::Approx(0.5).epsilon(1e-7));

    const Scenario sc = build_scenario(named("volcano"));
    CHECK(sc.model.grid.nx == 200);
    CHECK(sc.model.grid.ny == 100);
}

TEST_CASE("Stommel basin setup") {
    const Scenario sc = build_scenario(named("stommel"));
    const Model& m = sc.model;
    CHECK(m.grid.nx == 200);
    CHECK(m.grid.ny == 120);
    CHECK(m.grid.y_max() == doctest::Approx(2.0 * std::numbers::pi * 1e6));
    CHECK(interior_min(m.grid, sc.state.h) == 200.0);
    CHECK(stommel_stress(0.1, 1.0, 0.0) == doctest::Approx(-0.1));
    CHECK(std::abs(stommel_stress(0.1, 1.0, 0.5)) < 1e-17);
    CHECK(m.physics.f0 + m.physics.beta0 * m.grid.y_max() == doctest::Approx(8.78e-5).epsilon(1e-3));
    CHECK(m.scheme.wb_geostrophic);
}

TEST_CASE("scenario errors") {
    CHECK_THROWS_AS(build_scenario(named("nope")), ConfigError);
    ScenarioSpec s = named("lake");
    s.params["unknown"] = 1.0;
    CHECK_THROWS_AS(build_scenario(s), ConfigError);
    ScenarioSpec wb = named("dam_break");
    wb.scheme["wb_geostrophic"] = "on";
    CHECK_THROWS_AS(build_scenario(wb), ConfigError);
    ScenarioSpec bad = named("euler");
    bad.params["beta"] = std::numbers::pi / 1.5;  // sin(βh) vanishes where h = 1.5
    CHECK_THROWS_AS(build_scenario(bad), ConfigError);
    bad.params["beta"] = 0.0;
    CHECK_THROWS_AS(build_scenario(bad), ConfigError);
}

TEST_CASE("every generator satisfies the core invariants") {
    for (const auto& name : scenario_names()) {
        ScenarioSpec s = named(name);
        s.nx = 12;
        s.ny = 8;
        const Scenario sc = build_scenario(s);
        CHECK(interior_min(sc.model.grid, sc.state.h) >= 0.0);
        CHECK(deviation_sum_residual(sc.model.grid, sc.state, sc.model.layers) <= 1e-15);
    }
}

TEST_CASE("config parsing") {
    CHECK_THROWS_WITH_AS(parse_config(""), "missing scenario.name", ConfigError);
    const ScenarioSpec s = parse_config(
        "# comment\n"
        "scenario.name = euler\n"
        "scenario.nx = 50\n"
        "scenario.alpha = 0.5  # trailing\n"
        "scheme.kind = unsplit\n"
        "physics.nu = 0.01\n"
        "output.interval = 2.5\n");
    CHECK(s.name == "euler");
    CHECK(s.nx == 50);
    CHECK(s.params.at("alpha") == 0.5);
    CHECK(s.scheme.at("kind") == "unsplit");
    CHECK(s.output_interval == 2.5);

    CHECK_THROWS_WITH_AS(parse_config("scenario.name = x\nbogus\n"), "line 2: expected key = value", ConfigError);
    CHECK_THROWS_AS(parse_config("scenario.name = x\nscheme.wat = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("scenario.name = x\nfoo.bar = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("scenario.name = x\nscenario.nx = 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("scenario.name = x\nscheme.subcycling = maybe\n"), ConfigError);
}

TEST_CASE("config round trip") {
    ScenarioSpec s = named("stommel");
    s.nx = 100;
    s.ny = 60;
    s.layers = 20;
    s.t_final = 1.0 / 3.0;
    s.x_max = 1e7;
    s.params["depth"] = 123.456789012345678;
    s.scheme["wb_geostrophic"] = "off";
    s.physics["friction"] = "0.0002";
    s.output_interval = 86400.0;
    s.output_dir = "out";
    s.heatmap = "speed";
    s.monitor = true;
    CHECK(parse_config(print_config(s)) == s);
}

TEST_CASE("snapshot round trip is bitwise") {
    ScenarioSpec spec = named("volcano");
    spec.nx = 8;
    spec.ny = 5;
    spec.layers = 3;
    const Scenario sc = build_scenario(spec);
    Snapshot snap = make_snapshot(sc.model.grid, sc.state, sc.model.layers);
    snap.rows[3][snap.column("u2")] = 1.0 / 3.0;
    snap.time = 0.0;
    const auto path = temp_path("snap.csv");
    write_snapshot(snap, path.string());
    const Snapshot back = read_snapshot(path.string());
    CHECK(back == snap);
    CHECK(back.columns.front() == "x");
    CHECK(back.columns.back() == "vbar");
    std::filesystem::remove(path);

    snap.rows[0][0] = std::nan("");
    CHECK_THROWS(write_snapshot(snap, path.string()));
}

TEST_CASE("split and unsplit snapshots share one schema") {
    ScenarioSpec spec = named("dam_break");
    spec.nx = 10;
    const Scenario a = build_scenario(spec);
    spec.scheme["kind"] = "unsplit";
    const Scenario b = build_scenario(spec);
    CHECK(make_snapshot(a.model.grid, a.state, a.model.layers).columns ==
          make_snapshot(b.model.grid, b.state, b.model.layers).columns);
}

TEST_CASE("heatmap output") {
    ScenarioSpec spec = named("volcano");
    spec.nx = 8;
    spec.ny = 4;
    const Scenario sc = build_scenario(spec);
    const auto path = temp_path("map.ppm");
    write_heatmap(sc.model.grid, state_field(sc.model.grid, sc.state, sc.model.layers, "zb"), path.string());
    std::ifstream f(path, std::ios::binary);
    std::string magic;
    int w = 0, h = 0, maxv = 0;
    f >> magic >> w >> h >> maxv;
    CHECK(magic == "P6");
    CHECK(w == 8);
    CHECK(h == 4);
    CHECK(maxv == 255);
    f.get();
    std::string pixels((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(pixels.size() == 8u * 4u * 3u);
    std::ifstream side(path.string() + ".txt");
    std::string key;
    double lo = 0, hi = 0;
    side >> key >> lo >> key >> hi;
    CHECK(lo == interior_min(sc.model.grid, sc.state.zb));
    CHECK(hi == interior_max(sc.model.grid, sc.state.zb));
    std::filesystem::remove(path);
    std::filesystem::remove(path.string() + ".txt");
    CHECK_THROWS_AS(state_field(sc.model.grid, sc.state, sc.model.layers, "u99"), ConfigError);
}
