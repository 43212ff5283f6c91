#include <mlsw/barotropic.hpp>

#include <mlsw/geostrophic.hpp>
#include <mlsw/physics.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace mlsw {

namespace {

double pos(double a) { return std::max(a, 0.0); }
double neg(double a) { return -std::min(a, 0.0); }

}  // namespace

SweInterfaceFlux rusanov_swe_flux(double h_left, double h_right, double un_left, double un_right,
                                  double ut_left, double ut_right, double gravity) {
    const double a = std::max(std::abs(un_left) + std::sqrt(gravity * h_left),
                              std::abs(un_right) + std::sqrt(gravity * h_right));
    return rusanov_swe_flux(h_left, h_right, un_left, un_right, ut_left, ut_right, gravity, a);
}

SweInterfaceFlux rusanov_swe_flux(double h_left, double h_right, double un_left, double un_right,
                                  double ut_left, double ut_right, double gravity, double a) {
    SweInterfaceFlux f;
    f.h_left = h_left;
    f.h_right = h_right;
    f.p_left = 0.5 * gravity * h_left * h_left;
    f.p_right = 0.5 * gravity * h_right * h_right;
    f.speed = a;
    const double ql = h_left * un_left;
    const double qr = h_right * un_right;
    f.mass = 0.5 * (ql + qr) - 0.5 * a * (h_right - h_left);
    f.mom_normal = 0.5 * (ql * un_left + f.p_left + qr * un_right + f.p_right) - 0.5 * a * (qr - ql);
    f.mom_tangent =
        0.5 * (ql * ut_left + qr * ut_right) - 0.5 * a * (h_right * ut_right - h_left * ut_left);
    return f;
}

SweInterfaceFlux swe_flux(double h_left, double h_right, double un_left, double un_right,
                          double ut_left, double ut_right, double z_left, double z_right,
                          double gravity) {
    const double zs = std::max(z_left, z_right);
    const double hl = std::max(0.0, h_left + z_left - zs);
    const double hr = std::max(0.0, h_right + z_right - zs);
    return rusanov_swe_flux(hl, hr, un_left, un_right, ut_left, ut_right, gravity);
}

double velocity(double h, double hq, double dry_height) { return h >= dry_height ? hq / h : 0.0; }

BarotropicFields barotropic_fields(const Grid& g, const SimState& s, const LayerConfig& layers) {
    BarotropicFields b;
    b.h = s.h;
    const Field ubar = mean_velocity(s.u, layers);
    b.hu = Field(g);
    for_each_cell(g, [&](int i, int j) { b.hu(i, j) = s.h(i, j) * ubar(i, j); });
    if (s.has_v()) {
        const Field vbar = mean_velocity(s.v, layers);
        b.hv = Field(g);
        for_each_cell(g, [&](int i, int j) { b.hv(i, j) = s.h(i, j) * vbar(i, j); });
    }
    return b;
}

void fill_barotropic_ghosts(const Grid& g, BarotropicFields& b) {
    fill_ghosts(g, b.h, Parity::even);
    fill_ghosts(g, b.hu, Parity::odd_x);
    if (!b.hv.empty()) fill_ghosts(g, b.hv, Parity::odd_y);
}

double barotropic_dt(const Grid& g, const BarotropicFields& b, double gravity, double cfl,
                     double dry_height) {
    double sx = 0.0;
    double sy = 0.0;
    for_each_cell(g, [&](int i, int j) {
        const double h = b.h(i, j);
        if (h < dry_height) return;
        const double c = std::sqrt(gravity * h);
        sx = std::max(sx, std::abs(b.hu(i, j) / h) + c);
        if (!b.hv.empty()) sy = std::max(sy, std::abs(b.hv(i, j) / h) + c);
    });
    const double rate = sx / g.dx + (g.dim == 2 ? sy / g.dy : 0.0);
    return rate > 0.0 ? cfl / rate : std::numeric_limits<double>::infinity();
}

std::size_t x_face_index(const Grid& g, int i, int j) {
    return static_cast<std::size_t>(i + 1) + static_cast<std::size_t>(g.nx + 1) * static_cast<std::size_t>(j);
}

std::size_t y_face_index(const Grid& g, int i, int j) {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(g.nx) * static_cast<std::size_t>(j + 1);
}

SweTendency assemble_swe_tendency(const Grid& g, std::span<const SweInterfaceFlux> fx,
                                  std::span<const SweInterfaceFlux> fy) {
    const bool two_d = g.dim == 2;
    SweTendency t;
    t.dh = Field(g);
    t.dhu = Field(g);
    t.mass_x = Field(g);
    if (two_d) {
        t.dhv = Field(g);
        t.mass_y = Field(g);
    }
    for (int j = 0; j < g.ny; ++j)
        for (int i = -1; i < g.nx; ++i) t.mass_x(i, j) = fx[x_face_index(g, i, j)].mass;
    if (two_d)
        for (int j = -1; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) t.mass_y(i, j) = fy[y_face_index(g, i, j)].mass;
    t.flux_evaluations = static_cast<std::int64_t>(fx.size() + fy.size());

    for_each_cell(g, [&](int i, int j) {
        const SweInterfaceFlux& e = fx[x_face_index(g, i, j)];
        const SweInterfaceFlux& w = fx[x_face_index(g, i - 1, j)];
        t.dh(i, j) = -(e.mass - w.mass) / g.dx;
        t.dhu(i, j) = -((e.mom_normal - e.p_left) - (w.mom_normal - w.p_right)) / g.dx;
        if (!two_d) return;
        const SweInterfaceFlux& n = fy[y_face_index(g, i, j)];
        const SweInterfaceFlux& s = fy[y_face_index(g, i, j - 1)];
        t.dh(i, j) -= (n.mass - s.mass) / g.dy;
        t.dhu(i, j) -= (n.mom_tangent - s.mom_tangent) / g.dy;
        t.dhv(i, j) = -(e.mom_tangent - w.mom_tangent) / g.dx -
                      ((n.mom_normal - n.p_left) - (s.mom_normal - s.p_right)) / g.dy;
    });
    return t;
}

SweTendency swe_tendency(const Grid& g, const BarotropicFields& b, const Field& zb,
                         double gravity, double dry_height) {
    const bool two_d = g.dim == 2;
    auto vel = [&](const Field& q, int i, int j) { return velocity(b.h(i, j), q(i, j), dry_height); };
    std::vector<SweInterfaceFlux> fx(static_cast<std::size_t>(g.nx + 1) * static_cast<std::size_t>(g.ny));
    for (int j = 0; j < g.ny; ++j)
        for (int i = -1; i < g.nx; ++i) {
            const double utl = two_d ? vel(b.hv, i, j) : 0.0;
            const double utr = two_d ? vel(b.hv, i + 1, j) : 0.0;
            fx[x_face_index(g, i, j)] =
                swe_flux(b.h(i, j), b.h(i + 1, j), vel(b.hu, i, j), vel(b.hu, i + 1, j), utl, utr,
                         zb(i, j), zb(i + 1, j), gravity);
        }
    std::vector<SweInterfaceFlux> fy;
    if (two_d) {
        fy.resize(static_cast<std::size_t>(g.nx) * static_cast<std::size_t>(g.ny + 1));
        for (int j = -1; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                fy[y_face_index(g, i, j)] =
                    swe_flux(b.h(i, j), b.h(i, j + 1), vel(b.hv, i, j), vel(b.hv, i, j + 1),
                             vel(b.hu, i, j), vel(b.hu, i, j + 1), zb(i, j), zb(i, j + 1), gravity);
    }
    return assemble_swe_tendency(g, fx, fy);
}

void apply_tendency(const Grid& g, BarotropicFields& b, const SweTendency& t, double dt,
                    double dry_height) {
    const bool two_d = !b.hv.empty();
    for_each_cell(g, [&](int i, int j) {
        const double h = std::max(0.0, b.h(i, j) + dt * t.dh(i, j));
        b.h(i, j) = h;
        b.hu(i, j) += dt * t.dhu(i, j);
        if (two_d) b.hv(i, j) += dt * t.dhv(i, j);
        if (h < dry_height) {
            b.hu(i, j) = 0.0;
            if (two_d) b.hv(i, j) = 0.0;
        }
    });
}

SweTendency barotropic_substep(const Grid& g, BarotropicFields& b, const Field& zb,
                               double gravity, double dt, double dry_height) {
    fill_barotropic_ghosts(g, b);
    SweTendency t = swe_tendency(g, b, zb, gravity, dry_height);
    apply_tendency(g, b, t, dt, dry_height);
    return t;
}

AccumulatedMassFlux::AccumulatedMassFlux(const Grid& g) : x(g) {
    if (g.dim == 2) y = Field(g);
}

void AccumulatedMassFlux::reset() {
    x.fill(0.0);
    if (!y.empty()) y.fill(0.0);
    tau = 0.0;
    substeps = 0;
}

void AccumulatedMassFlux::add(const Grid& g, const SweTendency& t, double dt) {
    for (int j = 0; j < g.ny; ++j)
        for (int i = -1; i < g.nx; ++i) x(i, j) += dt * t.mass_x(i, j);
    if (g.dim == 2)
        for (int j = -1; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) y(i, j) += dt * t.mass_y(i, j);
    tau += dt;
    ++substeps;
}

bool nonnegativity_check(const Grid& g, const Field& h_old, const AccumulatedMassFlux& acc,
                         const SweTendency& t, double dt) {
    bool ok = true;
    for_each_cell(g, [&](int i, int j) {
        if (!ok) return;
        double out = (pos(acc.x(i, j) + dt * t.mass_x(i, j)) +
                      neg(acc.x(i - 1, j) + dt * t.mass_x(i - 1, j))) / g.dx;
        if (g.dim == 2)
            out += (pos(acc.y(i, j) + dt * t.mass_y(i, j)) +
                    neg(acc.y(i, j - 1) + dt * t.mass_y(i, j - 1))) / g.dy;
        if (h_old(i, j) - out < -1e-14 * h_old(i, j)) ok = false;
    });
    return ok;
}

Field accumulated_height(const Grid& g, const Field& h_old, const AccumulatedMassFlux& acc) {
    Field h(g);
    for_each_cell(g, [&](int i, int j) {
        double v = h_old(i, j) - (acc.x(i, j) - acc.x(i - 1, j)) / g.dx;
        if (g.dim == 2) v -= (acc.y(i, j) - acc.y(i, j - 1)) / g.dy;
        h(i, j) = v;
    });
    return h;
}

void adjust_deviations(const Grid& g, std::vector<Field*> phi, const std::vector<Parity>& parity,
                       const Field& h_old, const AccumulatedMassFlux& acc, double dry_height) {
    const Field h_mass = accumulated_height(g, h_old, acc);
    auto tf = [](double F, double l, double r) { return l * pos(F) - r * neg(F); };
    for (std::size_t k = 0; k < phi.size(); ++k) {
        Field& f = *phi[k];
        fill_ghosts(g, f, parity[k]);
        Field out(g);
        for_each_cell(g, [&](int i, int j) {
            const double hm = h_mass(i, j);
            if (hm < dry_height) return;
            double q = h_old(i, j) * f(i, j) -
                       (tf(acc.x(i, j), f(i, j), f(i + 1, j)) -
                        tf(acc.x(i - 1, j), f(i - 1, j), f(i, j))) / g.dx;
            if (g.dim == 2)
                q -= (tf(acc.y(i, j), f(i, j), f(i, j + 1)) -
                      tf(acc.y(i, j - 1), f(i, j - 1), f(i, j))) / g.dy;
            out(i, j) = q / hm;
        });
        f = std::move(out);
    }
}

BarotropicReport barotropic_loop(const Model& m, SimState& s, double dt,
                                 BarotropicObserver* observer) {
    BarotropicReport rep;
    if (!(dt > 0.0)) return rep;
    const Grid& g = m.grid;
    const SchemeConfig& sc = m.scheme;
    const int n = m.layers.size();
    const bool two_d = g.dim == 2;
    const bool wb = sc.wb_geostrophic && two_d;
    const bool coriolis = m.physics.coriolis && two_d && !m.coriolis.empty();

    apply_boundary(g, s);
    BarotropicFields b = barotropic_fields(g, s, m.layers);
    std::vector<Field> sig_x = deviations(s.u, mean_velocity(s.u, m.layers));
    std::vector<Field> sig_y;
    if (two_d) sig_y = deviations(s.v, mean_velocity(s.v, m.layers));

    std::vector<Field*> phi;
    std::vector<Parity> parity;
    for (auto& f : sig_x) {
        phi.push_back(&f);
        parity.push_back(Parity::odd_x);
    }
    for (auto& f : sig_y) {
        phi.push_back(&f);
        parity.push_back(Parity::odd_y);
    }
    for (auto& f : s.T) {
        phi.push_back(&f);
        parity.push_back(Parity::even);
    }

    Field h_old = b.h;
    AccumulatedMassFlux acc(g);
    auto flush = [&]() {
        std::vector<Field> before;
        if (observer != nullptr)
            for (std::size_t k = 0; k < phi.size(); ++k) {
                fill_ghosts(g, *phi[k], parity[k]);
                before.push_back(*phi[k]);
            }
        adjust_deviations(g, phi, parity, h_old, acc, sc.dry_height);
        if (observer != nullptr) {
            std::vector<Field> after;
            for (Field* f : phi) after.push_back(*f);
            observer->on_flush(g, h_old, acc, before, after);
        }
        h_old = b.h;
        acc.reset();
        ++rep.flushes;
    };

    double tau = 0.0;
    bool last = false;
    while (!last) {
        fill_barotropic_ghosts(g, b);
        const double remaining = dt - tau;
        double step = barotropic_dt(g, b, sc.gravity, sc.cfl_barotropic, sc.dry_height);
        if (step >= remaining) {
            step = remaining;
            last = true;
        }
        SweTendency t = wb ? wb_swe_tendency(g, b, s.zb, m.coriolis, sc.gravity, sc.dry_height)
                           : swe_tendency(g, b, s.zb, sc.gravity, sc.dry_height);
        rep.flux_evaluations += t.flux_evaluations;
        if (acc.substeps > 0 && !nonnegativity_check(g, h_old, acc, t, step)) flush();

        std::optional<BarotropicFields> before;
        if (observer != nullptr) before = b;
        apply_tendency(g, b, t, step, sc.dry_height);
        if (coriolis && !wb) coriolis_mean_step(g, b, m.coriolis, step);
        acc.add(g, t, step);
        tau += step;
        ++rep.substeps;
        if (observer != nullptr) observer->on_substep(g, *before, b, s.zb, t, step);
        if (!sc.subcycling && !last) flush();
    }
    flush();

    s.h = b.h;
    for_each_cell(g, [&](int i, int j) {
        const double h = b.h(i, j);
        const double ub = velocity(h, b.hu(i, j), sc.dry_height);
        const double vb = two_d ? velocity(h, b.hv(i, j), sc.dry_height) : 0.0;
        for (int a = 0; a < n; ++a) {
            const auto k = static_cast<std::size_t>(a);
            if (h < sc.dry_height) {
                s.u[k](i, j) = 0.0;
                if (two_d) s.v[k](i, j) = 0.0;
                continue;
            }
            s.u[k](i, j) = ub + sig_x[k](i, j);
            if (two_d) s.v[k](i, j) = vb + sig_y[k](i, j);
        }
    });
    return rep;
}

}  // namespace mlsw
