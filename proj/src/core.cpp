#include <mlsw/core.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mlsw {

LayerConfig::LayerConfig(std::vector<double> weights) : w_(std::move(weights)) {
    if (w_.empty()) throw ConfigError("layer configuration needs at least one layer");
    double sum = 0.0;
    for (double l : w_) {
        if (!(l > 0.0) || !std::isfinite(l)) throw ConfigError("layer weights must be positive");
        sum += l;
    }
    if (std::abs(sum - 1.0) > 1e-14) throw ConfigError("layer weights must sum to 1");
}

LayerConfig LayerConfig::uniform(int n) {
    if (n < 1) throw ConfigError("layer count must be at least 1");
    return LayerConfig(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n));
}

double LayerConfig::lower_fraction(int a) const {
    return std::accumulate(w_.begin(), w_.begin() + a, 0.0);
}

SimState make_state(const Grid& g, int layers) {
    SimState s;
    s.h = Field(g);
    s.zb = Field(g);
    s.u.assign(static_cast<std::size_t>(layers), Field(g));
    if (g.dim == 2) s.v.assign(static_cast<std::size_t>(layers), Field(g));
    s.T.assign(static_cast<std::size_t>(layers), Field(g));
    return s;
}

Field mean_velocity(std::span<const Field> u, const LayerConfig& layers) {
    Field m = u.front();
    auto out = m.raw();
    std::fill(out.begin(), out.end(), 0.0);
    for (int a = 0; a < layers.size(); ++a) {
        auto in = u[static_cast<std::size_t>(a)].raw();
        const double l = layers[a];
        for (std::size_t k = 0; k < out.size(); ++k) out[k] += l * in[k];
    }
    return m;
}

std::vector<Field> deviations(std::span<const Field> u, const Field& mean) {
    std::vector<Field> sig(u.begin(), u.end());
    auto m = mean.raw();
    for (auto& s : sig) {
        auto d = s.raw();
        for (std::size_t k = 0; k < d.size(); ++k) d[k] -= m[k];
    }
    return sig;
}

Field total_energy(const Grid& g, const SimState& s, const LayerConfig& layers, double gravity) {
    Field e(g);
    for_each_cell(g, [&](int i, int j) {
        const double h = s.h(i, j);
        double kin = 0.0;
        for (int a = 0; a < layers.size(); ++a) {
            const auto k = static_cast<std::size_t>(a);
            double q = s.u[k](i, j) * s.u[k](i, j);
            if (s.has_v()) q += s.v[k](i, j) * s.v[k](i, j);
            kin += layers[a] * q;
        }
        e(i, j) = 0.5 * gravity * h * h + gravity * h * s.zb(i, j) + 0.5 * h * kin;
    });
    return e;
}

double total_energy_integral(const Grid& g, const SimState& s, const LayerConfig& layers,
                             double gravity) {
    return integrate(g, total_energy(g, s, layers, gravity));
}

void fill_ghosts(const Grid& g, Field& f, Parity p) {
    auto edge = [](Boundary b, bool odd, double inner, double wrapped) {
        switch (b) {
            case Boundary::periodic: return wrapped;
            case Boundary::wall: return odd ? -inner : inner;
            case Boundary::outflow: return inner;
        }
        return inner;
    };
    const bool odd_x = p == Parity::odd_x;
    const bool odd_y = p == Parity::odd_y;
    for (int j = 0; j < g.ny; ++j) {
        f(-1, j) = edge(g.west, odd_x, f(0, j), f(g.nx - 1, j));
        f(g.nx, j) = edge(g.east, odd_x, f(g.nx - 1, j), f(0, j));
    }
    if (g.dim != 2) return;
    for (int i = -1; i <= g.nx; ++i) {
        f(i, -1) = edge(g.south, odd_y, f(i, 0), f(i, g.ny - 1));
        f(i, g.ny) = edge(g.north, odd_y, f(i, g.ny - 1), f(i, 0));
    }
}

void apply_boundary(const Grid& g, SimState& s) {
    fill_ghosts(g, s.h, Parity::even);
    fill_ghosts(g, s.zb, Parity::even);
    for (auto& f : s.u) fill_ghosts(g, f, Parity::odd_x);
    for (auto& f : s.v) fill_ghosts(g, f, Parity::odd_y);
    for (auto& f : s.T) fill_ghosts(g, f, Parity::even);
}

void zero_dry_velocities(const Grid& g, SimState& s, double h_dry) {
    for_each_cell(g, [&](int i, int j) {
        if (s.h(i, j) >= h_dry) return;
        for (auto& f : s.u) f(i, j) = 0.0;
        for (auto& f : s.v) f(i, j) = 0.0;
    });
}

void solve_tridiagonal(std::span<const double> a, std::span<const double> b,
                       std::span<const double> c, std::span<double> d) {
    const std::size_t n = d.size();
    if (n == 0) return;
    std::vector<double> cp(n, 0.0);
    double den = b[0];
    if (den == 0.0) throw std::runtime_error("singular tridiagonal system");
    cp[0] = n > 1 ? c[0] / den : 0.0;
    d[0] /= den;
    for (std::size_t k = 1; k < n; ++k) {
        den = b[k] - a[k] * cp[k - 1];
        if (den == 0.0) throw std::runtime_error("singular tridiagonal system");
        cp[k] = k + 1 < n ? c[k] / den : 0.0;
        d[k] = (d[k] - a[k] * d[k - 1]) / den;
    }
    for (std::size_t k = n - 1; k-- > 0;) d[k] -= cp[k] * d[k + 1];
}

double deviation_sum_residual(const Grid& g, const SimState& s, const LayerConfig& layers) {
    const Field ubar = mean_velocity(s.u, layers);
    double worst = 0.0;
    auto check = [&](const std::vector<Field>& comp, const Field& mean) {
        for_each_cell(g, [&](int i, int j) {
            double sum = 0.0;
            for (int a = 0; a < layers.size(); ++a)
                sum += layers[a] * (comp[static_cast<std::size_t>(a)](i, j) - mean(i, j));
            worst = std::max(worst, std::abs(sum));
        });
    };
    check(s.u, ubar);
    if (s.has_v()) check(s.v, mean_velocity(s.v, layers));
    return worst;
}

}  // namespace mlsw
