#include <mlsw/physics.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace mlsw {

void vertical_viscosity_column(std::span<double> u, std::span<const double> dz, double nu,
                               double bottom_friction, const SurfaceForcing& top, double dt) {
    const std::size_t n = u.size();
    std::vector<double> lo(n, 0.0), di(n), up(n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
        di[a] = dz[a];
        u[a] *= dz[a];
    }
    for (std::size_t a = 0; a + 1 < n; ++a) {
        const double c = dt * nu / (0.5 * (dz[a] + dz[a + 1]));
        di[a] += c;
        di[a + 1] += c;
        up[a] = -c;
        lo[a + 1] = -c;
    }
    di[0] += dt * bottom_friction;
    di[n - 1] += dt * top.coefficient;
    u[n - 1] += dt * (top.coefficient * top.target + top.stress);
    solve_tridiagonal(lo, di, up, u);
}

double surface_stress_x(const PhysicsConfig& p, double y) {
    if (p.stress_length <= 0.0) return 0.0;
    return -p.stress_amplitude * std::cos(std::numbers::pi * y / p.stress_length) / p.water_density;
}

void vertical_viscosity_step(const Model& m, SimState& s, double dt) {
    const PhysicsConfig& p = m.physics;
    if (!p.vertical) return;
    const Grid& g = m.grid;
    const auto n = static_cast<std::size_t>(m.layers.size());
    std::vector<double> col(n), dz(n);
    auto solve = [&](std::vector<Field>& comp, int i, int j, const SurfaceForcing& top) {
        for (std::size_t a = 0; a < n; ++a) col[a] = comp[a](i, j);
        vertical_viscosity_column(col, dz, p.nu, p.friction, top, dt);
        for (std::size_t a = 0; a < n; ++a) comp[a](i, j) = col[a];
    };
    for_each_cell(g, [&](int i, int j) {
        const double h = s.h(i, j);
        if (h < m.scheme.dry_height) return;
        for (std::size_t a = 0; a < n; ++a) dz[a] = m.layers[static_cast<int>(a)] * h;
        solve(s.u, i, j, {p.wind_coefficient, p.wind_u, surface_stress_x(p, g.yc(j))});
        if (s.has_v()) solve(s.v, i, j, {p.wind_coefficient, p.wind_v, 0.0});
    });
}

double horizontal_viscosity_bound(const Grid& g, double nu_hor) {
    if (nu_hor <= 0.0) return std::numeric_limits<double>::infinity();
    const double d = g.dim == 2 ? std::min(g.dx, g.dy) : g.dx;
    return 0.25 * d * d / nu_hor;
}

void horizontal_viscosity_step(const Model& m, SimState& s, double dt) {
    const PhysicsConfig& p = m.physics;
    if (!p.horizontal || p.nu_hor <= 0.0) return;
    const Grid& g = m.grid;
    const double bound = horizontal_viscosity_bound(g, p.nu_hor);
    if (dt > bound * (1.0 + 1e-12))
        throw CflViolation("horizontal viscosity step " + std::to_string(dt) +
                           " exceeds stability bound " + std::to_string(bound));
    apply_boundary(g, s);
    const double cx = p.nu_hor * dt / (g.dx * g.dx);
    const double cy = g.dim == 2 ? p.nu_hor * dt / (g.dy * g.dy) : 0.0;
    auto diffuse = [&](std::vector<Field>& comp) {
        for (std::size_t a = 0; a < comp.size(); ++a) {
            const Field& q = comp[a];
            Field out = q;
            for_each_cell(g, [&](int i, int j) {
                const double h = s.h(i, j);
                if (h < m.scheme.dry_height) return;
                auto flux = [&](int i2, int j2, double c) {
                    return c * std::min(h, s.h(i2, j2)) * (q(i2, j2) - q(i, j));
                };
                double dq = flux(i + 1, j, cx) + flux(i - 1, j, cx);
                if (g.dim == 2) dq += flux(i, j + 1, cy) + flux(i, j - 1, cy);
                out(i, j) = q(i, j) + dq / h;
            });
            comp[a] = std::move(out);
        }
    };
    diffuse(s.u);
    if (s.has_v()) diffuse(s.v);
}

void rotate(double& x, double& y, double theta) {
    const double c = std::cos(theta);
    const double sn = std::sin(theta);
    const double nx = c * x + sn * y;
    const double ny = -sn * x + c * y;
    x = nx;
    y = ny;
}

void coriolis_mean_step(const Grid& g, BarotropicFields& b, const Field& f, double dt) {
    if (b.hv.empty()) return;
    for_each_cell(g, [&](int i, int j) { rotate(b.hu(i, j), b.hv(i, j), f(i, j) * dt); });
}

void coriolis_deviation_step(const Model& m, SimState& s, double dt) {
    if (!m.physics.coriolis || !s.has_v() || m.coriolis.empty()) return;
    const Field ub = mean_velocity(s.u, m.layers);
    const Field vb = mean_velocity(s.v, m.layers);
    for_each_cell(m.grid, [&](int i, int j) {
        const double theta = m.coriolis(i, j) * dt;
        for (std::size_t a = 0; a < s.u.size(); ++a) {
            double sx = s.u[a](i, j) - ub(i, j);
            double sy = s.v[a](i, j) - vb(i, j);
            rotate(sx, sy, theta);
            s.u[a](i, j) = ub(i, j) + sx;
            s.v[a](i, j) = vb(i, j) + sy;
        }
    });
}

void apply_physics(const Model& m, SimState& s, double dt, bool rotate_deviations) {
    vertical_viscosity_step(m, s, dt);
    horizontal_viscosity_step(m, s, dt);
    if (rotate_deviations) coriolis_deviation_step(m, s, dt);
}

double physics_dt_bound(const Model& m) {
    if (!m.physics.horizontal) return std::numeric_limits<double>::infinity();
    return horizontal_viscosity_bound(m.grid, m.physics.nu_hor);
}

}  // namespace mlsw
