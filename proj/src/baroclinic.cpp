#include <mlsw/baroclinic.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mlsw {

namespace {

double pos(double a) { return std::max(a, 0.0); }
double neg(double a) { return -std::min(a, 0.0); }

double max_abs(const Grid& g, const std::vector<Field>& fields) {
    double m = 0.0;
    for (const auto& f : fields)
        for_each_cell(g, [&](int i, int j) { m = std::max(m, std::abs(f(i, j))); });
    return m;
}

double max_abs_wet(const Grid& g, const std::vector<Field>& fields, const Field& h, double dry) {
    double m = 0.0;
    for (const auto& f : fields)
        for_each_cell(g, [&](int i, int j) {
            if (h(i, j) >= dry) m = std::max(m, std::abs(f(i, j)));
        });
    return m;
}

/// Deviation fields (x and, in 2D, y) over the padded arrays.
struct Deviations {
    std::vector<Field> x;
    std::vector<Field> y;
};

Deviations compute_deviations(const SimState& s, const LayerConfig& layers) {
    Deviations d;
    d.x = deviations(s.u, mean_velocity(s.u, layers));
    if (s.has_v()) d.y = deviations(s.v, mean_velocity(s.v, layers));
    return d;
}

double rate_bound(double rate) {
    return rate > 0.0 ? 1.0 / rate : std::numeric_limits<double>::infinity();
}

}  // namespace

double rusanov_mass_flux(double h_left, double sigma_left, double h_right, double sigma_right,
                         double speed) {
    return 0.5 * (h_left * sigma_left + h_right * sigma_right) - 0.5 * speed * (h_right - h_left);
}

double upwind_height_mass_flux(double h_left, double sigma_left, double h_right,
                               double sigma_right) {
    return h_left < h_right ? h_left * sigma_left : h_right * sigma_right;
}

double transported_flux(double flux, double phi_left, double phi_right) {
    return phi_left * pos(flux) - phi_right * neg(flux);
}

double interface_upwind(double lower, double upper, double G) { return G > 0.0 ? upper : lower; }

void rusanov_mass_flux(std::span<const double> h_left, std::span<const double> sigma_left,
                       std::span<const double> h_right, std::span<const double> sigma_right,
                       std::span<double> out) {
    double speed = 0.0;
    for (std::size_t a = 0; a < out.size(); ++a)
        speed = std::max({speed, std::abs(sigma_left[a]), std::abs(sigma_right[a])});
    for (std::size_t a = 0; a < out.size(); ++a)
        out[a] = rusanov_mass_flux(h_left[a], sigma_left[a], h_right[a], sigma_right[a], speed);
}

double baroclinic_dt(const Grid& g, const SimState& s, const LayerConfig& layers,
                     const SchemeConfig& scheme) {
    const Deviations d = compute_deviations(s, layers);
    double rate = max_abs_wet(g, d.x, s.h, scheme.dry_height) / g.dx;
    if (g.dim == 2) rate += max_abs_wet(g, d.y, s.h, scheme.dry_height) / g.dy;
    return scheme.cfl_baroclinic * rate_bound(rate);
}

double prediction_positivity_bound(const Grid& g, const SimState& s, const LayerConfig& layers,
                                   MassFlux flux) {
    const Deviations d = compute_deviations(s, layers);
    double rate = max_abs(g, d.x) / g.dx;
    if (g.dim == 2) rate += max_abs(g, d.y) / g.dy;
    const double factor = flux == MassFlux::rusanov ? 1.0 : 0.5;
    return factor * rate_bound(rate);
}

PredictedState prediction_step(const Grid& g, const SimState& s, const LayerConfig& layers,
                               MassFlux flux, double dt) {
    const double bound = prediction_positivity_bound(g, s, layers, flux);
    if (dt > bound * (1.0 + 1e-12))
        throw CflViolation("prediction time step " + std::to_string(dt) +
                           " exceeds positivity bound " + std::to_string(bound));

    const int n = layers.size();
    const auto un = static_cast<std::size_t>(n);
    const bool two_d = g.dim == 2;
    const Deviations d = compute_deviations(s, layers);

    PredictedState p;
    p.h.assign(un, Field(g));
    p.hu.assign(un, Field(g));
    if (two_d) p.hv.assign(un, Field(g));
    p.hT.assign(un, Field(g));
    p.h_half = Field(g);
    p.flux_x.assign(un, Field(g));
    p.speed_x = Field(g);
    if (two_d) {
        p.flux_y.assign(un, Field(g));
        p.speed_y = Field(g);
    }

    auto face_fluxes = [&](const std::vector<Field>& sig, std::vector<Field>& out, Field& speed,
                           int di, int dj, int i0, int i1, int j0, int j1) {
        for (int j = j0; j <= j1; ++j)
            for (int i = i0; i <= i1; ++i) {
                double A = 0.0;
                for (const auto& sg : sig)
                    A = std::max({A, std::abs(sg(i, j)), std::abs(sg(i + di, j + dj))});
                speed(i, j) = flux == MassFlux::rusanov ? A : 0.0;
                for (std::size_t a = 0; a < un; ++a) {
                    const double l = layers[static_cast<int>(a)];
                    const double hl = l * s.h(i, j);
                    const double hr = l * s.h(i + di, j + dj);
                    const double sl = sig[a](i, j);
                    const double sr = sig[a](i + di, j + dj);
                    out[a](i, j) = flux == MassFlux::rusanov
                                       ? rusanov_mass_flux(hl, sl, hr, sr, A)
                                       : upwind_height_mass_flux(hl, sl, hr, sr);
                }
                p.flux_evaluations += n;
            }
    };
    face_fluxes(d.x, p.flux_x, p.speed_x, 1, 0, -1, g.nx - 1, 0, g.ny - 1);
    if (two_d) face_fluxes(d.y, p.flux_y, p.speed_y, 0, 1, 0, g.nx - 1, -1, g.ny - 1);

    const double lx = dt / g.dx;
    const double ly = dt / g.dy;
    auto update = [&](const Field& phi, const Field& fx, const Field* fy, int i, int j) {
        double div = transported_flux(fx(i, j), phi(i, j), phi(i + 1, j)) -
                     transported_flux(fx(i - 1, j), phi(i - 1, j), phi(i, j));
        double res = -lx * div;
        if (fy != nullptr) {
            const double divy = transported_flux((*fy)(i, j), phi(i, j), phi(i, j + 1)) -
                                transported_flux((*fy)(i, j - 1), phi(i, j - 1), phi(i, j));
            res -= ly * divy;
        }
        return res;
    };

    for_each_cell(g, [&](int i, int j) {
        double sum = 0.0;
        for (std::size_t a = 0; a < un; ++a) {
            const double ha = layers[static_cast<int>(a)] * s.h(i, j);
            const Field& fx = p.flux_x[a];
            const Field* fy = two_d ? &p.flux_y[a] : nullptr;
            double hs = ha - lx * (fx(i, j) - fx(i - 1, j));
            if (two_d) hs -= ly * ((*fy)(i, j) - (*fy)(i, j - 1));
            p.h[a](i, j) = hs;
            sum += hs;
            p.hu[a](i, j) = ha * s.u[a](i, j) + update(s.u[a], fx, fy, i, j);
            if (two_d) p.hv[a](i, j) = ha * s.v[a](i, j) + update(s.v[a], fx, fy, i, j);
            p.hT[a](i, j) = ha * s.T[a](i, j) + update(s.T[a], fx, fy, i, j);
        }
        p.h_half(i, j) = sum;
    });
    return p;
}

std::vector<double> exchange_column(std::span<const double> h_star, double h_half,
                                    const LayerConfig& layers, double dt) {
    const auto n = h_star.size();
    std::vector<double> G(n + 1, 0.0);
    for (std::size_t a = 0; a < n; ++a)
        G[a + 1] = (layers[static_cast<int>(a)] * h_half - h_star[a]) / dt + G[a];
    return G;
}

ExchangeField exchange_terms(const Grid& g, const PredictedState& p, const LayerConfig& layers,
                             double dt, double dry_height) {
    const auto n = static_cast<std::size_t>(layers.size());
    ExchangeField ex;
    ex.G.assign(n + 1, Field(g));
    std::vector<double> col(n);
    for_each_cell(g, [&](int i, int j) {
        if (p.h_half(i, j) < dry_height) return;
        for (std::size_t a = 0; a < n; ++a) col[a] = p.h[a](i, j);
        const auto G = exchange_column(col, p.h_half(i, j), layers, dt);
        for (std::size_t a = 1; a < n; ++a) ex.G[a](i, j) = G[a];
        ex.closure_residual = std::max(ex.closure_residual, std::abs(G[n]));
    });
    return ex;
}

void correct_column_explicit(std::span<const double> hphi_star, std::span<const double> phi_star,
                             std::span<const double> G, std::span<const double> h_new, double dt,
                             std::span<double> phi_out) {
    const std::size_t n = hphi_star.size();
    for (std::size_t a = 0; a < n; ++a) {
        const double upper = a + 1 < n ? interface_upwind(phi_star[a], phi_star[a + 1], G[a + 1]) : 0.0;
        const double lower = a > 0 ? interface_upwind(phi_star[a - 1], phi_star[a], G[a]) : 0.0;
        const double hphi = hphi_star[a] + dt * (upper * G[a + 1] - lower * G[a]);
        phi_out[a] = hphi / h_new[a];
    }
}

void correct_column_implicit(std::span<const double> hphi_star, std::span<const double> G,
                             std::span<const double> h_new, double dt, std::span<double> phi_out) {
    const std::size_t n = hphi_star.size();
    std::vector<double> lo(n), di(n), up(n);
    for (std::size_t a = 0; a < n; ++a) {
        lo[a] = -dt * neg(G[a]);
        up[a] = -dt * pos(G[a + 1]);
        di[a] = h_new[a] + dt * (neg(G[a + 1]) + pos(G[a]));
        phi_out[a] = hphi_star[a];
    }
    solve_tridiagonal(lo, di, up, phi_out);
}

CorrectionCheck check_correction_cfl(const Grid& g, const PredictedState& p,
                                     const ExchangeField& ex, const LayerConfig& layers,
                                     double dt, double dry_height) {
    const auto n = static_cast<std::size_t>(layers.size());
    CorrectionCheck c;
    for_each_cell(g, [&](int i, int j) {
        if (p.h_half(i, j) < dry_height) return;
        for (std::size_t a = 0; a < n; ++a) {
            const double out = dt * (neg(ex.G[a + 1](i, j)) + pos(ex.G[a](i, j)));
            if (out == 0.0) continue;
            const double avail =
                std::min(layers[static_cast<int>(a)] * p.h_half(i, j), p.h[a](i, j));
            const double ratio = avail > 0.0 ? out / avail : std::numeric_limits<double>::infinity();
            c.worst_ratio = std::max(c.worst_ratio, ratio);
        }
    });
    c.ok = c.worst_ratio <= 1.0 + 1e-12;
    return c;
}

void apply_correction(const Grid& g, const PredictedState& p, const ExchangeField& ex,
                      const LayerConfig& layers, double dt, Correction kind, double dry_height,
                      SimState& out) {
    const auto n = static_cast<std::size_t>(layers.size());
    std::vector<double> G(n + 1), hnew(n), hphi(n), phi(n), res(n);
    auto correct = [&](const std::vector<Field>& hq, std::vector<Field>& target, int i, int j) {
        for (std::size_t a = 0; a < n; ++a) {
            hphi[a] = hq[a](i, j);
            const double hs = p.h[a](i, j);
            phi[a] = hs > 0.0 ? hphi[a] / hs : 0.0;
        }
        if (kind == Correction::explicit_update)
            correct_column_explicit(hphi, phi, G, hnew, dt, res);
        else
            correct_column_implicit(hphi, G, hnew, dt, res);
        for (std::size_t a = 0; a < n; ++a) target[a](i, j) = res[a];
    };
    for_each_cell(g, [&](int i, int j) {
        const double hh = p.h_half(i, j);
        out.h(i, j) = hh;
        if (hh < dry_height) {
            for (std::size_t a = 0; a < n; ++a) {
                out.u[a](i, j) = 0.0;
                if (out.has_v()) out.v[a](i, j) = 0.0;
                out.T[a](i, j) = 0.0;
            }
            return;
        }
        for (std::size_t a = 0; a <= n; ++a) G[a] = ex.G[a](i, j);
        for (std::size_t a = 0; a < n; ++a) hnew[a] = layers[static_cast<int>(a)] * hh;
        correct(p.hu, out.u, i, j);
        if (out.has_v()) correct(p.hv, out.v, i, j);
        correct(p.hT, out.T, i, j);
    });
}

BaroclinicOutcome baroclinic_step(const Grid& g, SimState& s, const LayerConfig& layers,
                                  const SchemeConfig& scheme, double dt) {
    apply_boundary(g, s);
    BaroclinicOutcome o;
    for (int k = 0; k <= scheme.max_halvings; ++k) {
        PredictedState p = prediction_step(g, s, layers, scheme.flux, dt);
        o.flux_evaluations += p.flux_evaluations;
        ExchangeField ex = exchange_terms(g, p, layers, dt, scheme.dry_height);
        if (scheme.correction == Correction::explicit_update &&
            !check_correction_cfl(g, p, ex, layers, dt, scheme.dry_height).ok) {
            dt *= 0.5;
            ++o.halvings;
            continue;
        }
        apply_correction(g, p, ex, layers, dt, scheme.correction, scheme.dry_height, s);
        o.dt = dt;
        o.predicted = std::move(p);
        o.exchange = std::move(ex);
        return o;
    }
    throw CflViolation("exchange CFL still violated after " +
                       std::to_string(scheme.max_halvings) + " halvings");
}

}  // namespace mlsw
