/// @file test_analysis.cpp
/// @brief Eigenvalue solvers against dense eigensolves, invariant monitors, norms and EOC.

#include "helpers.hpp"

#include <mlsw/analysis.hpp>
#include <mlsw/baroclinic.hpp>
#include <mlsw/barotropic.hpp>
#include <mlsw/splitting.hpp>

#include <Eigen/Dense>
#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace mlsw;
using testing::periodic_line;

namespace {

/// Sorted real parts of the eigenvalues of the baroclinic quasilinear matrix
/// [[D_σ − ℓ σᵀ, h ℓ ℓᵀ], [0, D_σ]].
std::vector<double> dense_baroclinic(const std::vector<double>& hl, const std::vector<double>& ul) {
    const auto n = static_cast<Eigen::Index>(hl.size());
    double h = 0.0, q = 0.0;
    for (std::size_t a = 0; a < hl.size(); ++a) {
        h += hl[a];
        q += hl[a] * ul[a];
    }
    const double ub = q / h;
    Eigen::VectorXd ell(n), sig(n);
    for (Eigen::Index a = 0; a < n; ++a) {
        ell(a) = hl[static_cast<std::size_t>(a)] / h;
        sig(a) = ul[static_cast<std::size_t>(a)] - ub;
    }
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    M.topLeftCorner(n, n) = Eigen::MatrixXd(sig.asDiagonal()) - ell * sig.transpose();
    M.topRightCorner(n, n) = h * ell * ell.transpose();
    M.bottomRightCorner(n, n) = sig.asDiagonal();
    const Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(M, false).eigenvalues();
    std::vector<double> out;
    for (Eigen::Index k = 0; k < ev.size(); ++k) out.push_back(ev(k).real());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("barotropic eigenvalues") {
    const EigenReport r = barotropic_eigenvalues(1.0, 0.0, 9.81, 3);
    REQUIRE(r.values.size() == 4);
    CHECK(r.values[0] == doctest::Approx(-3.1321).epsilon(1e-4));
    CHECK(r.values[1] == 0.0);
    CHECK(r.values[2] == 0.0);
    CHECK(r.values[3] == doctest::Approx(3.1321).epsilon(1e-4));

    const EigenReport dry = barotropic_eigenvalues(0.0, 0.7, 9.81, 2);
    for (double v : dry.values) CHECK(v == 0.7);

    const EigenReport s = barotropic_eigenvalues(0.25, 2.0, 9.81, 1);
    REQUIRE(s.values.size() == 2);
    CHECK(s.values[0] == doctest::Approx(2.0 - 1.5661).epsilon(1e-4));
    CHECK(s.values[1] == doctest::Approx(2.0 + 1.5661).epsilon(1e-4));
    CHECK(s.hyperbolic);
}

TEST_CASE("baroclinic eigenvalues: closed-form and degenerate cases") {
    // ℓ = (0.25, 0.75), σ = (−3, 1) with h = 1 and ū = 0
    const std::vector<double> h{0.25, 0.75}, u{-3.0, 1.0};
    const EigenReport r = baroclinic_eigenvalues(h, u);
    REQUIRE(r.values.size() == 4);
    CHECK(r.values[0] == doctest::Approx(-3.0));
    CHECK(r.values[1] == doctest::Approx(-2.0));
    CHECK(std::abs(r.values[2]) < 1e-12);
    CHECK(r.values[3] == doctest::Approx(1.0));
    CHECK(r.hyperbolic);
    CHECK_FALSE(r.degenerate);

    const std::vector<double> hs{0.5, 0.5}, us{-0.8, 0.8};
    const EigenReport d = baroclinic_eigenvalues(hs, us);
    REQUIRE(d.values.size() == 4);
    CHECK(d.values[0] == doctest::Approx(-0.8));
    CHECK(std::abs(d.values[1]) < 1e-12);
    CHECK(std::abs(d.values[2]) < 1e-12);
    CHECK(d.values[3] == doctest::Approx(0.8));
    CHECK(d.degenerate);
    CHECK_FALSE(d.hyperbolic);
    CHECK_FALSE(d.reason.empty());

    const std::vector<double> hz{0.3, 0.3, 0.4}, uz{1.5, 1.5, 1.5};
    const EigenReport z = baroclinic_eigenvalues(hz, uz);
    REQUIRE(z.values.size() == 6);
    for (double v : z.values) CHECK(std::abs(v) < 1e-14);
    CHECK(z.degenerate);
}

TEST_CASE("baroclinic eigenvalues agree with a dense eigensolve") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> H(0.1, 2.0), U(-2.0, 2.0);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + trial % 4;
        std::vector<double> hl(static_cast<std::size_t>(n)), ul(hl.size());
        for (std::size_t a = 0; a < hl.size(); ++a) {
            hl[a] = H(rng);
            ul[a] = U(rng);
        }
        const EigenReport r = baroclinic_eigenvalues(hl, ul);
        const std::vector<double> ref = dense_baroclinic(hl, ul);
        REQUIRE(r.values.size() == ref.size());
        for (std::size_t k = 0; k < ref.size(); ++k) CHECK(r.values[k] == doctest::Approx(ref[k]).epsilon(1e-8).scale(1.0));
        // interlacing bound: all eigenvalues inside [min σ, max σ]
        double h = 0.0, q = 0.0;
        for (std::size_t a = 0; a < hl.size(); ++a) {
            h += hl[a];
            q += hl[a] * ul[a];
        }
        const double lo = *std::min_element(ul.begin(), ul.end()) - q / h;
        const double hi = *std::max_element(ul.begin(), ul.end()) - q / h;
        CHECK(r.values.front() >= lo - 1e-12);
        CHECK(r.values.back() <= hi + 1e-12);
    }
}

TEST_CASE("characteristic function vanishes at the computed roots") {
    const std::vector<double> ell{0.2, 0.3, 0.5}, sig{-1.0, 0.4, 0.16};
    // the deviations satisfy Σ ℓ σ = 0, so they double as velocities with zero mean
    CHECK(characteristic_function(ell, sig, 0.0) == doctest::Approx(0.0));
    std::vector<double> hl{0.2, 0.3, 0.5}, ul(3);
    for (std::size_t a = 0; a < 3; ++a) ul[a] = sig[a];
    const EigenReport r = baroclinic_eigenvalues(hl, ul);
    for (double v : r.values) {
        const bool pole = std::any_of(sig.begin(), sig.end(), [&](double s) { return std::abs(s - v) < 1e-9; });
        if (!pole) CHECK(std::abs(characteristic_function(ell, sig, v)) < 1e-8);
    }
}

TEST_CASE("monitors report nothing on a lake at rest") {
    const Grid g = Grid::line(10, 0.0, 1.0, Boundary::wall, Boundary::wall);
    const LayerConfig l = LayerConfig::uniform(3);
    Model m(g, l, SchemeConfig{}, PhysicsConfig{});
    SimState s = make_state(g, 3);
    for_each_cell(g, [&](int i, int j) {
        s.zb(i, j) = 0.3 * std::sin(i);
        s.h(i, j) = 1.0 - s.zb(i, j);
    });
    apply_boundary(g, s);
    InvariantMonitor mon(m);
    split_step(s, m, 0.05, &mon);
    const StageResiduals& r = mon.residuals();
    CHECK(r.worst_entropy() <= 1e-14);
    CHECK(r.worst_max_principle() <= 1e-14);
    CHECK(r.deviation_sum <= 1e-15);
}

TEST_CASE("prediction entropy and max-principle residuals on random states") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + trial % 4;
        const Grid g = periodic_line(8, 0.1);
        const LayerConfig l = testing::random_layers(n, rng);
        const SimState s = testing::random_state(g, n, rng);
        const SchemeConfig sc;
        const double dt = baroclinic_dt(g, s, l, sc);
        const PredictedState p = prediction_step(g, s, l, sc.flux, dt);
        CHECK(prediction_entropy_residual(g, s, p, l, sc.gravity, dt, sc.dry_height) <= 1e-10);
        CHECK(prediction_max_principle_violation(g, s, p, sc.dry_height) <= 1e-10);
    }
}

TEST_CASE("correction never increases column kinetic energy") {
    std::mt19937 rng(78);
    for (Correction kind : {Correction::explicit_update, Correction::implicit_update})
        for (int trial = 0; trial < 100; ++trial) {
            const int n = 2 + trial % 3;
            const Grid g = periodic_line(8, 0.1);
            const LayerConfig l = testing::random_layers(n, rng);
            SimState s = testing::random_state(g, n, rng);
            SchemeConfig sc;
            sc.correction = kind;
            const BaroclinicOutcome o = baroclinic_step(g, s, l, sc, baroclinic_dt(g, s, l, sc));
            CHECK(correction_entropy_residual(g, o.predicted, s, l, sc.dry_height) <= 1e-12);
            CHECK(correction_max_principle_violation(g, o.predicted, s, kind, sc.dry_height) <= 1e-10);
        }
}

TEST_CASE("shallow-water substep entropy on random flat-bottom states") {
    std::mt19937 rng(79);
    for (int trial = 0; trial < 100; ++trial) {
        const Grid g = periodic_line(8, 0.1);
        const SimState s = testing::random_state(g, 1, rng);
        BarotropicFields b = barotropic_fields(g, s, LayerConfig::uniform(1));
        fill_barotropic_ghosts(g, b);
        const BarotropicFields before = b;
        const double dt = barotropic_dt(g, b, 9.81, 0.45, 1e-10);
        barotropic_substep(g, b, s.zb, 9.81, dt, 1e-10);
        CHECK(swe_entropy_residual(g, before, b, s.zb, 9.81, dt, 1e-10) <= 1e-10);
    }
}

TEST_CASE("split steps on random states pass every monitor") {
    std::mt19937 rng(80);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + trial % 4;
        const Grid g = periodic_line(8, 0.1);
        const LayerConfig l = testing::random_layers(n, rng);
        SimState s = testing::random_state(g, n, rng);
        const Model m(g, l, SchemeConfig{}, PhysicsConfig{});
        InvariantMonitor mon(m);
        split_step(s, m, std::numeric_limits<double>::infinity(), &mon);
        const StageResiduals& r = mon.residuals();
        CHECK(r.worst_entropy() <= 1e-10);
        CHECK(r.worst_max_principle() <= 1e-10);
        CHECK(r.deviation_sum <= 1e-11);
        CHECK(r.min_height >= 0.0);
    }
}

TEST_CASE("max-principle monitors on constant fields") {
    const Grid g = periodic_line(5, 0.1);
    const LayerConfig l = LayerConfig::uniform(2);
    SimState s = make_state(g, 2);
    s.h.fill(1.0);
    for (auto& T : s.T) T.fill(3.0);
    s.u[0].fill(0.2);
    s.u[1].fill(-0.2);
    apply_boundary(g, s);
    const PredictedState p = prediction_step(g, s, l, MassFlux::rusanov, 0.1);
    CHECK(prediction_max_principle_violation(g, s, p, 1e-10) <= 1e-15);
}

TEST_CASE("L1 error and EOC tables") {
    const Grid g = periodic_line(10, 0.1);
    Field f(g);
    for_each_cell(g, [&](int i, int) { f(i) = g.xc(i) * g.xc(i); });
    CHECK(l1_error(g, f, f) == 0.0);
    CHECK(l1_error(g, f, [](double x, double) { return x * x; }) == doctest::Approx(0.0).scale(1.0));
    CHECK(l1_error(g, Field(g, 1.0), Field(g, 0.0)) == doctest::Approx(1.0));

    const EOCTable t = eoc({50, 100, 200}, {"h"}, {{0.2, 0.1, 0.05}});
    REQUIRE(t.orders[0].size() == 2);
    CHECK(t.orders[0][0] == doctest::Approx(1.0));
    CHECK(t.orders[0][1] == doctest::Approx(1.0));
    CHECK(t.monotone);
    CHECK(t.to_csv().find("h") != std::string::npos);
    CHECK_FALSE(eoc({1, 2}, {"u"}, {{0.1, 0.2}}).monotone);
    CHECK_THROWS_AS(eoc({1, 2}, {"u"}, {{0.1}}), std::invalid_argument);
}

TEST_CASE("tracer L2 norm") {
    const Grid g = periodic_line(6, 0.5);
    const LayerConfig l({0.3, 0.7});
    SimState s = make_state(g, 2);
    for_each_cell(g, [&](int i, int j) { s.h(i, j) = 1.0 + 0.1 * i; });
    CHECK(tracer_l2(g, s, l) == 0.0);
    for (auto& T : s.T) T.fill(2.5);
    CHECK(tracer_l2(g, s, l) == doctest::Approx(2.5 * std::sqrt(total_mass(g, s))));
}

TEST_CASE("tracer L2 norm does not grow under advection") {
    std::mt19937 rng(81);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + trial % 4;
        const Grid g = periodic_line(8, 0.1);
        const LayerConfig l = testing::random_layers(n, rng);
        SimState s = testing::random_state(g, n, rng);
        const Model m(g, l, SchemeConfig{}, PhysicsConfig{});
        const double before = tracer_l2(g, s, l);
        split_step(s, m);
        CHECK(tracer_l2(g, s, l) <= before * (1.0 + 1e-13));
    }
}

TEST_CASE("cost counters") {
    const CostTotals zero = cost_counters({});
    CHECK(zero.steps == 0);
    CHECK(zero.substeps == 0);
    CHECK(zero.multilayer_flux_evaluations == 0);
    std::vector<StepReport> rs(3);
    for (auto& r : rs) {
        r.substeps = 4;
        r.multilayer_flux_evaluations = 10;
        r.swe_flux_evaluations = 7;
    }
    const CostTotals t = cost_counters(rs, 1.5);
    CHECK(t.steps == 3);
    CHECK(t.substeps == 12);
    CHECK(t.multilayer_flux_evaluations == 30);
    CHECK(t.swe_flux_evaluations == 21);
    CHECK(t.wall_seconds == 1.5);
}
