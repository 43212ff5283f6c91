#include <mlsw/scenarios.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace mlsw {

namespace {

constexpr double year = 365.0 * 86400.0;

struct Defaults {
    int nx = 100;
    int ny = 1;
    int layers = 10;
    double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
    double t_final = 1.0;
    Boundary x_bc = Boundary::wall;
    Boundary y_bc = Boundary::wall;
    bool two_d = false;
    std::map<std::string, double> params;
    SchemeConfig scheme;
    PhysicsConfig physics;
};

Defaults defaults_for(const std::string& name) {
    Defaults d;
    if (name == "euler") {
        d.x_min = -5.0;
        d.x_max = 5.0;
        d.t_final = 60.0;
        d.x_bc = Boundary::outflow;
        d.params = {{"alpha", 0.1}, {"beta", 1.0},         {"zbar", 2.0},          {"h_base", 2.0},
                    {"h_bump", 1.0}, {"tracer_left", -3.0}, {"tracer_right", -2.0}};
    } else if (name == "wind_cavity") {
        d.x_max = 3.0;
        d.t_final = 600.0;
        d.physics.vertical = true;
        d.physics.nu = 0.003;
        d.physics.friction = 0.1;
        d.physics.wind_coefficient = 0.1;
        d.physics.wind_u = 6.0;
        d.scheme.correction = Correction::explicit_update;
    } else if (name == "volcano") {
        d.two_d = true;
        d.nx = 200;
        d.ny = 100;
        d.x_max = 4.0;
        d.y_max = 2.0;
        d.t_final = 2.0;
    } else if (name == "stommel") {
        d.two_d = true;
        d.nx = 200;
        d.ny = 120;
        d.layers = 50;
        d.x_max = 1e7;
        d.y_max = 2.0 * std::numbers::pi * 1e6;
        d.t_final = 10.0 * year;
        d.params = {{"depth", 200.0}};
        d.scheme.correction = Correction::explicit_update;
        d.scheme.wb_geostrophic = true;
        d.scheme.dt_max = 3600.0;
        d.physics.vertical = true;
        d.physics.nu = 0.01;
        d.physics.friction = 2e-4;
        d.physics.stress_amplitude = 0.1;
        d.physics.coriolis = true;
        d.physics.f0 = 2.5e-5;
        d.physics.beta0 = 1e-11;
    } else if (name == "dam_break") {
        d.nx = 200;
        d.layers = 8;
        d.t_final = 0.1;
        d.params = {{"h_left", 2.0}, {"h_right", 1.0}, {"x_dam", 0.5}};
    } else if (name == "lake") {
        d.layers = 5;
        d.params = {{"level", 1.0}, {"bump", 0.5}, {"width", 0.1}};
    } else if (name == "geostrophic") {
        d.two_d = true;
        d.nx = 20;
        d.ny = 20;
        d.layers = 4;
        d.x_max = 1e5;
        d.y_max = 1e5;
        d.t_final = 3600.0;
        d.y_bc = Boundary::periodic;
        d.params = {{"h0", 10.0}, {"shear", 1e-5}};
        d.scheme.wb_geostrophic = true;
        d.physics.coriolis = true;
        d.physics.f0 = 1e-4;
    } else {
        throw ConfigError("unknown scenario '" + name + "'");
    }
    return d;
}

}  // namespace

// ---------------------------------------------------------------- Euler solution

double EulerSolution::h(double x) const { return h_base - h_bump * std::exp(-x * x); }

double EulerSolution::zb(double x) const {
    const double hh = h(x);
    const double s = std::sin(beta * hh);
    return zbar - hh - alpha * alpha * beta * beta / (2.0 * gravity * s * s);
}

double EulerSolution::u(double x, double z) const {
    const double hh = h(x);
    return alpha * beta * std::cos(beta * (z - zb(x))) / std::sin(beta * hh);
}

double EulerSolution::layer_velocity(double x, int a, const LayerConfig& layers) const {
    const double hh = h(x);
    const double z0 = zb(x) + hh * layers.lower_fraction(a);
    const double dz = hh * layers[a];
    const double mid = z0 + 0.5 * dz;
    const double off = 0.5 * dz * std::sqrt(0.6);
    return (5.0 * u(x, mid - off) + 8.0 * u(x, mid) + 5.0 * u(x, mid + off)) / 18.0;
}

// ---------------------------------------------------------------- generators

SimState init_analytical_euler(const Grid& g, const LayerConfig& layers, const EulerSolution& e,
                               double tracer_left, double tracer_right) {
    // sin(βh) must not vanish anywhere on the domain, not just at the cell centres
    const double x_lo = g.x0, x_hi = g.x_max();
    const double r2_min = x_lo <= 0.0 && x_hi >= 0.0 ? 0.0 : std::min(x_lo * x_lo, x_hi * x_hi);
    const double r2_max = std::max(x_lo * x_lo, x_hi * x_hi);
    const double bh_lo = std::abs(e.beta) * std::min(e.h(std::sqrt(r2_min)), e.h(std::sqrt(r2_max)));
    const double bh_hi = std::abs(e.beta) * std::max(e.h(std::sqrt(r2_min)), e.h(std::sqrt(r2_max)));
    if (std::floor(bh_hi / std::numbers::pi) >= std::ceil(bh_lo / std::numbers::pi))
        throw ConfigError("sin(beta h) vanishes inside the domain");

    SimState s = make_state(g, layers.size());
    for_each_cell(g, [&](int i, int j) {
        const double x = g.xc(i);
        s.h(i, j) = e.h(x);
        s.zb(i, j) = e.zb(x);
        const double T = x >= tracer_left && x <= tracer_right ? 1.0 : 0.0;
        for (int a = 0; a < layers.size(); ++a) {
            s.u[static_cast<std::size_t>(a)](i, j) = e.layer_velocity(x, a, layers);
            s.T[static_cast<std::size_t>(a)](i, j) = T;
        }
    });
    apply_boundary(g, s);
    return s;
}

SimState init_wind_cavity(const Grid& g, const LayerConfig& layers) {
    SimState s = make_state(g, layers.size());
    s.h.fill(1.0);
    for (int a = 0; a < layers.size(); ++a) {
        const double mid = layers.lower_fraction(a) + 0.5 * layers[a];
        s.T[static_cast<std::size_t>(a)].fill(mid >= 0.5 ? 25.0 : 8.0);
    }
    return s;
}

double volcano_bottom(double x, double y) {
    const double r = 2.0 * (x - 2.0) * (x - 2.0) + 4.0 * (y - 1.0) * (y - 1.0);
    return r <= std::log(8.0 / 5.0) ? 1.0 - 0.8 * std::exp(-r) : 0.8 * std::exp(-r);
}

double volcano_depth(double x, double y) {
    const double r = 2.0 * (x - 2.0) * (x - 2.0) + 4.0 * (y - 1.0) * (y - 1.0);
    const double level = r <= std::log(8.0 / 5.0) ? 0.45 : 0.3;
    return std::max(level - volcano_bottom(x, y), 0.0);
}

SimState init_volcano_lake(const Grid& g, const LayerConfig& layers) {
    SimState s = make_state(g, layers.size());
    for_each_cell(g, [&](int i, int j) {
        s.zb(i, j) = volcano_bottom(g.xc(i), g.yc(j));
        s.h(i, j) = volcano_depth(g.xc(i), g.yc(j));
    });
    apply_boundary(g, s);
    return s;
}

SimState init_stommel(const Grid& g, const LayerConfig& layers, double depth) {
    SimState s = make_state(g, layers.size());
    s.h.fill(depth);
    return s;
}

double stommel_stress(double F, double L, double y) { return -F * std::cos(std::numbers::pi * y / L); }

std::vector<std::string> scenario_names() {
    return {"euler", "wind_cavity", "volcano", "stommel", "dam_break", "lake", "geostrophic"};
}

Scenario build_scenario(const ScenarioSpec& spec) {
    Defaults d = defaults_for(spec.name);
    for (const auto& [k, v] : spec.params) {
        if (!d.params.contains(k))
            throw ConfigError("unknown parameter 'scenario." + k + "' for scenario " + spec.name);
        d.params[k] = v;
    }
    const int nx = spec.nx ? spec.nx : d.nx;
    const int ny = spec.ny ? spec.ny : d.ny;
    const int n = spec.layers ? spec.layers : d.layers;
    if (nx < 3 || (d.two_d && ny < 3)) throw ConfigError("resolution must be at least 3 cells per axis");
    if (n < 1) throw ConfigError("scenario.layers must be at least 1");
    const double x0 = spec.x_min.value_or(d.x_min), x1 = spec.x_max.value_or(d.x_max);
    const double y0 = spec.y_min.value_or(d.y_min), y1 = spec.y_max.value_or(d.y_max);
    if (!(x1 > x0) || (d.two_d && !(y1 > y0))) throw ConfigError("empty domain");
    const Grid g = d.two_d ? Grid::rect(nx, ny, x0, x1, y0, y1, d.x_bc, d.y_bc)
                           : Grid::line(nx, x0, x1, d.x_bc, d.x_bc);
    const LayerConfig layers = LayerConfig::uniform(n);

    if (spec.name == "stommel") d.physics.stress_length = y1 - y0;
    SchemeConfig scheme = d.scheme;
    for (const auto& [k, v] : spec.scheme) set_scheme_field(scheme, k, v);
    PhysicsConfig physics = d.physics;
    for (const auto& [k, v] : spec.physics) set_physics_field(physics, k, v);
    if (scheme.wb_geostrophic && g.dim != 2)
        throw ConfigError("the geostrophic well-balanced mode requires a 2D grid");

    Scenario sc;
    sc.name = spec.name;
    sc.t_final = spec.t_final.value_or(d.t_final);
    const auto& p = d.params;
    if (spec.name == "euler") {
        EulerSolution e;
        e.alpha = p.at("alpha");
        e.beta = p.at("beta");
        e.zbar = p.at("zbar");
        e.h_base = p.at("h_base");
        e.h_bump = p.at("h_bump");
        e.gravity = scheme.gravity;
        sc.state = init_analytical_euler(g, layers, e, p.at("tracer_left"), p.at("tracer_right"));
        sc.euler = e;
    } else if (spec.name == "wind_cavity") {
        sc.state = init_wind_cavity(g, layers);
    } else if (spec.name == "volcano") {
        sc.state = init_volcano_lake(g, layers);
    } else if (spec.name == "stommel") {
        sc.state = init_stommel(g, layers, p.at("depth"));
    } else if (spec.name == "dam_break") {
        sc.state = make_state(g, n);
        for_each_cell(g, [&](int i, int j) {
            sc.state.h(i, j) = g.xc(i) < p.at("x_dam") ? p.at("h_left") : p.at("h_right");
        });
    } else if (spec.name == "lake") {
        sc.state = make_state(g, n);
        const double xm = 0.5 * (x0 + x1);
        for_each_cell(g, [&](int i, int j) {
            const double xi = (g.xc(i) - xm) / p.at("width");
            const double z = p.at("bump") * std::exp(-xi * xi);
            sc.state.zb(i, j) = z;
            sc.state.h(i, j) = std::max(p.at("level") - z, 0.0);
        });
    } else if (spec.name == "geostrophic") {
        // u = 0, v = a x, h = h0 + f a x² / (2g): exact balance on an f-plane.
        sc.state = make_state(g, n);
        const double a = p.at("shear");
        const double xm = 0.5 * (x0 + x1);
        for_each_cell(g, [&](int i, int j) {
            const double x = g.xc(i) - xm;
            sc.state.h(i, j) = p.at("h0") + physics.f0 * a * x * x / (2.0 * scheme.gravity);
            for (auto& v : sc.state.v) v(i, j) = a * x;
        });
    }
    apply_boundary(g, sc.state);
    sc.model = Model(g, layers, scheme, physics);
    return sc;
}

EulerErrors euler_errors(const Scenario& sc, const SimState& s) {
    if (!sc.euler) throw ConfigError("no analytical reference for scenario " + sc.name);
    const Grid& g = sc.model.grid;
    const LayerConfig& layers = sc.model.layers;
    const EulerSolution& e = *sc.euler;
    EulerErrors err;
    for_each_cell(g, [&](int i, int j) {
        const double x = g.xc(i);
        err.h += std::abs(s.h(i, j) - e.h(x)) * g.dx;
        for (int a = 0; a < layers.size(); ++a)
            err.u += layers[a] * std::abs(s.u[static_cast<std::size_t>(a)](i, j) -
                                          e.layer_velocity(x, a, layers)) * g.dx;
    });
    return err;
}

}  // namespace mlsw
