#include <mlsw/splitting.hpp>

#include <mlsw/baroclinic.hpp>
#include <mlsw/barotropic.hpp>
#include <mlsw/physics.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <string>

namespace mlsw {

namespace {

void finish_step(const Model& m, SimState& s, double dt) {
    zero_dry_velocities(m.grid, s, m.scheme.dry_height);
    s.t += dt;
}

}  // namespace

StepReport split_step(SimState& s, const Model& m, double dt_cap, InvariantMonitor* monitor) {
    const Grid& g = m.grid;
    apply_boundary(g, s);
    double dt_bc = baroclinic_dt(g, s, m.layers, m.scheme);
    {
        // Deviations at rounding level give an unbounded baroclinic step; cap the subcycle count.
        const BarotropicFields b = barotropic_fields(g, s, m.layers);
        const double dt_bt =
            barotropic_dt(g, b, m.scheme.gravity, m.scheme.cfl_barotropic, m.scheme.dry_height);
        if (std::isfinite(dt_bt)) dt_bc = std::min(dt_bc, m.scheme.max_subcycles * dt_bt);
        else if (!std::isfinite(dt_bc)) dt_bc = dt_bt;
    }
    const double dt = std::min({dt_bc, dt_cap, m.scheme.dt_max, physics_dt_bound(m)});
    if (!std::isfinite(dt)) throw CflViolation("no finite time step: the domain is at rest and dry");

    std::optional<SimState> before;
    if (monitor != nullptr) before = s;
    const BaroclinicOutcome o = baroclinic_step(g, s, m.layers, m.scheme, dt);
    if (monitor != nullptr) monitor->on_baroclinic(*before, s, o);

    const BarotropicReport bt = barotropic_loop(m, s, o.dt, monitor);
    apply_physics(m, s, o.dt, true);
    finish_step(m, s, o.dt);
    if (monitor != nullptr) monitor->on_step_end(s);

    StepReport r;
    r.dt = o.dt;
    r.substeps = bt.substeps;
    r.halvings = o.halvings;
    r.flushes = bt.flushes;
    r.multilayer_flux_evaluations = o.flux_evaluations;
    r.swe_flux_evaluations = bt.flux_evaluations;
    if (monitor != nullptr) r.invariants = monitor->residuals();
    return r;
}

double unsplit_dt(const Model& m, const SimState& s) {
    const Grid& g = m.grid;
    double sx = 0.0, sy = 0.0;
    for_each_cell(g, [&](int i, int j) {
        const double h = s.h(i, j);
        if (h < m.scheme.dry_height) return;
        const double c = std::sqrt(m.scheme.gravity * h);
        for (std::size_t a = 0; a < s.u.size(); ++a) {
            sx = std::max(sx, std::abs(s.u[a](i, j)) + c);
            if (s.has_v()) sy = std::max(sy, std::abs(s.v[a](i, j)) + c);
        }
    });
    const double rate = sx / g.dx + (g.dim == 2 ? sy / g.dy : 0.0);
    return rate > 0.0 ? m.scheme.cfl_barotropic / rate : std::numeric_limits<double>::infinity();
}

StepReport unsplit_step(SimState& s, const Model& m, double dt_cap) {
    const Grid& g = m.grid;
    const SchemeConfig& sc = m.scheme;
    const double grav = sc.gravity;
    const int n = m.layers.size();
    const auto un = static_cast<std::size_t>(n);
    const bool two_d = g.dim == 2;
    apply_boundary(g, s);
    double dt = std::min({unsplit_dt(m, s), dt_cap, sc.dt_max, physics_dt_bound(m)});
    if (!std::isfinite(dt)) throw CflViolation("no finite time step: the domain is at rest and dry");

    StepReport r;
    r.substeps = 1;

    // Hydrostatically reconstructed Rusanov fluxes per layer with a common wave speed.
    // Face storage reuses the field layout (entry i is face i+1/2).
    struct LayerFaces {
        std::vector<Field> mass, mom, tan, pl, pr;
    };
    auto make_faces = [&]() {
        LayerFaces f;
        for (auto* v : {&f.mass, &f.mom, &f.tan, &f.pl, &f.pr}) v->assign(un, Field(g));
        return f;
    };
    LayerFaces fx = make_faces();
    LayerFaces fy;
    if (two_d) fy = make_faces();

    auto faces = [&](LayerFaces& out, const std::vector<Field>& qn, const std::vector<Field>* qt,
                     int di, int dj, int i0, int i1, int j0, int j1) {
        for (int j = j0; j <= j1; ++j)
            for (int i = i0; i <= i1; ++i) {
                const int i2 = i + di, j2 = j + dj;
                const double zs = std::max(s.zb(i, j), s.zb(i2, j2));
                const double hl = std::max(0.0, s.h(i, j) + s.zb(i, j) - zs);
                const double hr = std::max(0.0, s.h(i2, j2) + s.zb(i2, j2) - zs);
                const double cl = std::sqrt(grav * hl), cr = std::sqrt(grav * hr);
                double a = 0.0;
                for (std::size_t k = 0; k < un; ++k)
                    a = std::max({a, std::abs(qn[k](i, j)) + cl, std::abs(qn[k](i2, j2)) + cr});
                for (std::size_t k = 0; k < un; ++k) {
                    const double l = m.layers[static_cast<int>(k)];
                    const double utl = qt != nullptr ? (*qt)[k](i, j) : 0.0;
                    const double utr = qt != nullptr ? (*qt)[k](i2, j2) : 0.0;
                    const SweInterfaceFlux f =
                        rusanov_swe_flux(hl, hr, qn[k](i, j), qn[k](i2, j2), utl, utr, grav, a);
                    out.mass[k](i, j) = l * f.mass;
                    out.mom[k](i, j) = l * f.mom_normal;
                    out.tan[k](i, j) = l * f.mom_tangent;
                    out.pl[k](i, j) = l * f.p_left;
                    out.pr[k](i, j) = l * f.p_right;
                }
                r.multilayer_flux_evaluations += n;
            }
    };

    const int max_halvings = sc.max_halvings;
    for (int attempt = 0;; ++attempt) {
        r.multilayer_flux_evaluations = 0;
        faces(fx, s.u, two_d ? &s.v : nullptr, 1, 0, -1, g.nx - 1, 0, g.ny - 1);
        if (two_d) faces(fy, s.v, &s.u, 0, 1, 0, g.nx - 1, -1, g.ny - 1);

        const double lx = dt / g.dx;
        const double ly = dt / g.dy;
        PredictedState p;
        p.h.assign(un, Field(g));
        p.hu.assign(un, Field(g));
        if (two_d) p.hv.assign(un, Field(g));
        p.hT.assign(un, Field(g));
        p.h_half = Field(g);
        for_each_cell(g, [&](int i, int j) {
            double sum = 0.0;
            for (std::size_t k = 0; k < un; ++k) {
                const double ha = m.layers[static_cast<int>(k)] * s.h(i, j);
                double hs = ha - lx * (fx.mass[k](i, j) - fx.mass[k](i - 1, j));
                double hu = ha * s.u[k](i, j) -
                            lx * ((fx.mom[k](i, j) - fx.pl[k](i, j)) -
                                  (fx.mom[k](i - 1, j) - fx.pr[k](i - 1, j)));
                const Field& T = s.T[k];
                double hT = ha * T(i, j) - lx * (transported_flux(fx.mass[k](i, j), T(i, j), T(i + 1, j)) -
                                                 transported_flux(fx.mass[k](i - 1, j), T(i - 1, j), T(i, j)));
                if (two_d) {
                    hs -= ly * (fy.mass[k](i, j) - fy.mass[k](i, j - 1));
                    hu -= ly * (fy.tan[k](i, j) - fy.tan[k](i, j - 1));
                    double hv = ha * s.v[k](i, j) - lx * (fx.tan[k](i, j) - fx.tan[k](i - 1, j)) -
                                ly * ((fy.mom[k](i, j) - fy.pl[k](i, j)) -
                                      (fy.mom[k](i, j - 1) - fy.pr[k](i, j - 1)));
                    p.hv[k](i, j) = hv;
                    hT -= ly * (transported_flux(fy.mass[k](i, j), T(i, j), T(i, j + 1)) -
                                transported_flux(fy.mass[k](i, j - 1), T(i, j - 1), T(i, j)));
                }
                p.h[k](i, j) = std::max(hs, 0.0);
                p.hu[k](i, j) = hu;
                p.hT[k](i, j) = hT;
                sum += p.h[k](i, j);
            }
            p.h_half(i, j) = sum;
        });
        ExchangeField ex = exchange_terms(g, p, m.layers, dt, sc.dry_height);
        if (sc.correction == Correction::explicit_update &&
            !check_correction_cfl(g, p, ex, m.layers, dt, sc.dry_height).ok) {
            if (attempt >= max_halvings)
                throw CflViolation("exchange CFL still violated after " +
                                   std::to_string(sc.max_halvings) + " halvings");
            dt *= 0.5;
            ++r.halvings;
            continue;
        }
        apply_correction(g, p, ex, m.layers, dt, sc.correction, sc.dry_height, s);
        break;
    }

    if (m.physics.coriolis && two_d && !m.coriolis.empty())
        for_each_cell(g, [&](int i, int j) {
            for (std::size_t k = 0; k < un; ++k) rotate(s.u[k](i, j), s.v[k](i, j), m.coriolis(i, j) * dt);
        });
    apply_physics(m, s, dt, false);
    finish_step(m, s, dt);
    r.dt = dt;
    return r;
}

StepReport step(SimState& s, const Model& m, double dt_cap, InvariantMonitor* monitor) {
    return m.scheme.kind == SchemeKind::split ? split_step(s, m, dt_cap, monitor)
                                              : unsplit_step(s, m, dt_cap);
}

RunResult run(const Model& m, SimState& s, const RunOptions& opt, const SnapshotSink& sink,
              const StepHook& hook) {
    if (opt.t_final < 0.0) throw ConfigError("t_final must be non-negative");
    const auto start = std::chrono::steady_clock::now();
    RunResult res;
    std::optional<InvariantMonitor> monitor;
    if (opt.monitor) monitor.emplace(m);

    auto emit = [&]() {
        if (sink) sink(s);
        ++res.snapshots;
    };
    emit();
    const double t0 = s.t;
    const double end = t0 + opt.t_final;
    const double eps = 1e-12 * std::max(1.0, std::abs(end));
    int next_output = 1;
    std::size_t steps = 0;
    while (end - s.t > eps && steps < opt.max_steps) {
        double target = end;
        if (opt.output_interval > 0.0)
            target = std::min(end, t0 + next_output * opt.output_interval);
        const StepReport r = step(s, m, target - s.t, monitor ? &*monitor : nullptr);
        ++steps;
        res.totals.add(r);
        if (hook) hook(s, r);
        if (target - s.t <= eps) {
            s.t = target;
            if (target < end) {
                emit();
                ++next_output;
            }
        }
    }
    if (opt.t_final > 0.0) emit();
    if (monitor) res.invariants = monitor->residuals();
    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    res.totals.wall_seconds = res.wall_seconds;
    return res;
}

}  // namespace mlsw
