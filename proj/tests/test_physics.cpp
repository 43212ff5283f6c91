/// @file test_physics.cpp
/// @brief Vertical and horizontal viscosity, wind and friction, Coriolis rotation.

#include "helpers.hpp"

#include <mlsw/physics.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace mlsw;

TEST_CASE("vertical viscosity without coefficients is the identity") {
    std::vector<double> u{0.3, -1.0, 2.0}, dz{0.2, 0.3, 0.5};
    const auto u0 = u;
    vertical_viscosity_column(u, dz, 0.0, 0.0, SurfaceForcing{}, 10.0);
    for (std::size_t a = 0; a < u.size(); ++a) CHECK(u[a] == doctest::Approx(u0[a]));
}

TEST_CASE("bottom friction decays column momentum monotonically") {
    std::vector<double> u(4, 1.0), dz(4, 0.25);
    double prev = 1.0;
    for (int k = 0; k < 20; ++k) {
        vertical_viscosity_column(u, dz, 0.01, 0.1, SurfaceForcing{}, 0.5);
        double m = 0.0;
        for (std::size_t a = 0; a < 4; ++a) m += dz[a] * u[a];
        CHECK(m < prev);
        CHECK(m > 0.0);
        prev = m;
    }
}

TEST_CASE("wind forcing drives the surface toward the wind velocity") {
    std::vector<double> u(5, 0.0), dz(5, 0.2);
    SurfaceForcing top;
    top.coefficient = 0.1;
    top.target = 6.0;
    double prev = 0.0;
    for (double dt : {1.0, 10.0, 100.0, 1e4, 1e8}) {
        std::vector<double> w = u;
        vertical_viscosity_column(w, dz, 0.003, 0.0, top, dt);
        CHECK(w.back() > prev);
        CHECK(w.back() <= 6.0 + 1e-12);
        prev = w.back();
    }
    CHECK(prev == doctest::Approx(6.0).epsilon(1e-6));
}

TEST_CASE("interior viscosity conserves momentum and obeys the column maximum principle") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> U(-1.0, 1.0), Z(0.05, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 6);
        std::vector<double> u(n), dz(n);
        for (std::size_t a = 0; a < n; ++a) {
            u[a] = U(rng);
            dz[a] = Z(rng);
        }
        const auto u0 = u;
        double m0 = 0.0, m1 = 0.0;
        vertical_viscosity_column(u, dz, std::abs(U(rng)), 0.0, SurfaceForcing{}, 5.0);
        for (std::size_t a = 0; a < n; ++a) {
            m0 += dz[a] * u0[a];
            m1 += dz[a] * u[a];
            CHECK(u[a] >= *std::min_element(u0.begin(), u0.end()) - 1e-12);
            CHECK(u[a] <= *std::max_element(u0.begin(), u0.end()) + 1e-12);
        }
        CHECK(std::abs(m1 - m0) <= 1e-12 * (1.0 + std::abs(m0)));
    }
}

TEST_CASE("surface stress profile") {
    PhysicsConfig p;
    p.stress_amplitude = 0.1;
    p.stress_length = 2.0 * std::numbers::pi * 1e6;
    CHECK(surface_stress_x(p, 0.0) == doctest::Approx(-1e-4));
    CHECK(std::abs(surface_stress_x(p, 0.5 * p.stress_length)) < 1e-18);
    CHECK(surface_stress_x(p, p.stress_length) == doctest::Approx(1e-4));
}

TEST_CASE("horizontal viscosity") {
    const Grid g = Grid::line(10, 0.0, 1.0, Boundary::outflow, Boundary::outflow);
    PhysicsConfig p;
    SimState s = make_state(g, 2);
    s.h.fill(1.0);
    for_each_cell(g, [&](int i, int j) {
        s.u[0](i, j) = 2.0 * g.xc(i) - 0.3;
        s.u[1](i, j) = std::sin(7.0 * g.xc(i));
    });
    const SimState s0 = s;
    {
        const Model m(g, LayerConfig::uniform(2), SchemeConfig{}, p);
        horizontal_viscosity_step(m, s, 0.01);
        CHECK(s.u == s0.u);
    }
    p.horizontal = true;
    p.nu_hor = 0.01;
    const Model m(g, LayerConfig::uniform(2), SchemeConfig{}, p);
    const double dt = horizontal_viscosity_bound(g, p.nu_hor);
    horizontal_viscosity_step(m, s, dt);
    for (int i = 1; i < 9; ++i) CHECK(s.u[0](i) == doctest::Approx(s0.u[0](i)).epsilon(1e-14));
    CHECK_THROWS_AS(horizontal_viscosity_step(m, s, 2.0 * dt), CflViolation);
}

TEST_CASE("Coriolis rotation") {
    double x = 1.0, y = 0.0;
    rotate(x, y, 0.0);
    CHECK(x == 1.0);
    CHECK(y == 0.0);
    rotate(x, y, std::numbers::pi / 2.0);
    CHECK(std::abs(x) < 1e-15);
    CHECK(y == doctest::Approx(-1.0));
    double a = 0.3, b = -0.4;
    rotate(a, b, 1.234);
    CHECK(std::hypot(a, b) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("beta-plane Coriolis field") {
    PhysicsConfig p;
    p.coriolis = true;
    p.f0 = 2.5e-5;
    p.beta0 = 1e-11;
    const double b = 2.0 * std::numbers::pi * 1e6;
    const Grid g = Grid::rect(4, 1000, 0.0, 1e7, 0.0, b, Boundary::wall, Boundary::wall);
    const Field f = coriolis_field(g, p);
    CHECK(f(0, 999) == doctest::Approx(8.78e-5).epsilon(1e-3));
    CHECK(p.f0 + p.beta0 * b == doctest::Approx(8.78e-5).epsilon(1e-3));
}

TEST_CASE("deviation rotation keeps the mean") {
    const Grid g = Grid::rect(3, 3, 0.0, 1.0, 0.0, 1.0, Boundary::periodic, Boundary::periodic);
    PhysicsConfig p;
    p.coriolis = true;
    p.f0 = 1e-4;
    const LayerConfig l = LayerConfig::uniform(2);
    const Model m(g, l, SchemeConfig{}, p);
    SimState s = make_state(g, 2);
    s.h.fill(1.0);
    s.u[0].fill(1.0);
    s.u[1].fill(0.0);
    s.v[0].fill(0.5);
    s.v[1].fill(0.5);
    coriolis_deviation_step(m, s, std::numbers::pi / 2.0 / p.f0);
    CHECK(s.u[0](1, 1) == doctest::Approx(0.5));
    CHECK(s.v[0](1, 1) == doctest::Approx(0.0));
    CHECK(s.v[1](1, 1) == doctest::Approx(1.0));
}
