#include <mlsw/analysis.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mlsw {

namespace {

double pos(double a) { return std::max(a, 0.0); }
double neg(double a) { return -std::min(a, 0.0); }

constexpr double tiny = std::numeric_limits<double>::min();

/// Positive part of a residual measured against a scale.
double relative(double residual, double scale) {
    if (!(residual > 0.0)) return 0.0;
    return residual / std::max(scale, tiny);
}

/// Distance of v outside [lo, hi], relative to the largest magnitude of the bounds.
double outside(double v, double lo, double hi) {
    const double d = std::max({v - hi, lo - v, 0.0});
    if (d == 0.0) return 0.0;
    return d / std::max({std::abs(lo), std::abs(hi), tiny});
}

/// Bounds of f over the cell and its face neighbours.
std::pair<double, double> stencil_bounds(const Grid& g, const Field& f, int i, int j) {
    double lo = f(i, j), hi = f(i, j);
    auto take = [&](double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    };
    take(f(i - 1, j));
    take(f(i + 1, j));
    if (g.dim == 2) {
        take(f(i, j - 1));
        take(f(i, j + 1));
    }
    return {lo, hi};
}

}  // namespace

void StageResiduals::merge(const StageResiduals& o) {
    prediction_entropy = std::max(prediction_entropy, o.prediction_entropy);
    correction_entropy = std::max(correction_entropy, o.correction_entropy);
    swe_entropy = std::max(swe_entropy, o.swe_entropy);
    deviation_entropy = std::max(deviation_entropy, o.deviation_entropy);
    prediction_max_principle = std::max(prediction_max_principle, o.prediction_max_principle);
    correction_max_principle = std::max(correction_max_principle, o.correction_max_principle);
    adjustment_max_principle = std::max(adjustment_max_principle, o.adjustment_max_principle);
    deviation_sum = std::max(deviation_sum, o.deviation_sum);
    exchange_closure = std::max(exchange_closure, o.exchange_closure);
    min_height = std::min(min_height, o.min_height);
}

double StageResiduals::worst_entropy() const {
    return std::max({prediction_entropy, correction_entropy, swe_entropy, deviation_entropy});
}

double StageResiduals::worst_max_principle() const {
    return std::max({prediction_max_principle, correction_max_principle, adjustment_max_principle});
}

void CostTotals::add(const StepReport& r) {
    ++steps;
    substeps += r.substeps;
    multilayer_flux_evaluations += r.multilayer_flux_evaluations;
    swe_flux_evaluations += r.swe_flux_evaluations;
}

CostTotals cost_counters(std::span<const StepReport> reports, double wall_seconds) {
    CostTotals c;
    for (const auto& r : reports) c.add(r);
    c.wall_seconds = wall_seconds;
    return c;
}

// ---------------------------------------------------------------- eigenvalues

EigenReport barotropic_eigenvalues(double h, double ubar, double gravity, int layers) {
    EigenReport r;
    const double c = std::sqrt(gravity * std::max(h, 0.0));
    r.values.push_back(ubar - c);
    for (int k = 1; k < layers; ++k) r.values.push_back(ubar);
    r.values.push_back(ubar + c);
    std::sort(r.values.begin(), r.values.end());
    r.hyperbolic = layers == 1 && c > 0.0;
    if (c == 0.0) {
        r.degenerate = true;
        r.reason = "dry column: all eigenvalues coincide";
    }
    return r;
}

double characteristic_function(std::span<const double> ell, std::span<const double> sigma,
                               double lambda) {
    double s = 0.0;
    for (std::size_t a = 0; a < ell.size(); ++a) s += sigma[a] * ell[a] / (sigma[a] - lambda);
    return 1.0 - s;
}

EigenReport baroclinic_eigenvalues(std::span<const double> h_layers,
                                   std::span<const double> u_layers) {
    const std::size_t n = h_layers.size();
    if (u_layers.size() != n) throw std::invalid_argument("layer height/velocity size mismatch");
    EigenReport r;
    if (n == 0) return r;

    double h = 0.0, hu = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
        h += h_layers[a];
        hu += h_layers[a] * u_layers[a];
    }
    const double ubar = h > 0.0 ? hu / h : 0.0;
    std::vector<double> sigma(n), ell(n);
    double smax = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
        sigma[a] = u_layers[a] - ubar;
        ell[a] = h > 0.0 ? h_layers[a] / h : 1.0 / static_cast<double>(n);
        smax = std::max(smax, std::abs(sigma[a]));
    }
    r.values = sigma;

    std::vector<std::string> reasons;
    if (smax == 0.0) {
        r.values.resize(2 * n, 0.0);
        r.degenerate = true;
        r.hyperbolic = false;
        r.reason = "all velocity deviations vanish";
        return r;
    }

    // Group equal deviations; each group is one pole of χ(λ) = Σ ℓ_α / (σ_α − λ).
    const double tol = 1e-12 * smax;
    std::vector<std::size_t> order(n);
    for (std::size_t a = 0; a < n; ++a) order[a] = a;
    std::sort(order.begin(), order.end(), [&](auto x, auto y) { return sigma[x] < sigma[y]; });
    struct Group {
        double sigma;
        double ell;
        int count;
    };
    std::vector<Group> groups;
    for (std::size_t k : order) {
        if (!groups.empty() && std::abs(sigma[k] - groups.back().sigma) < tol) {
            groups.back().ell += ell[k];
            ++groups.back().count;
        } else {
            groups.push_back({sigma[k], ell[k], 1});
        }
    }
    bool zero_group = false;
    for (auto& gr : groups) {
        if (std::abs(gr.sigma) < tol) {
            gr.sigma = 0.0;
            zero_group = true;
        }
    }
    if (zero_group) reasons.emplace_back("a velocity deviation vanishes");
    if (groups.size() < n) reasons.emplace_back("repeated velocity deviations");
    if (!zero_group) {
        double s = 0.0;
        for (std::size_t a = 0; a < n; ++a) s += h_layers[a] / sigma[a];
        if (std::abs(s) < 1e-10) reasons.emplace_back("sum of h_a / sigma_a vanishes");
    }

    // φ(λ) = −λ χ(λ): λ = 0 plus one root of the increasing χ between consecutive poles,
    // plus the extra multiplicity of repeated deviations.
    auto chi = [&](double lambda) {
        double s = 0.0;
        for (const auto& gr : groups) s += gr.ell / (gr.sigma - lambda);
        return s;
    };
    r.values.push_back(0.0);
    for (const auto& gr : groups)
        for (int c = 1; c < gr.count; ++c) r.values.push_back(gr.sigma);
    for (std::size_t k = 0; k + 1 < groups.size(); ++k) {
        double a = groups[k].sigma;
        double b = groups[k + 1].sigma;
        double mid = 0.5 * (a + b);
        for (int it = 0; it < 60; ++it) {
            mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            if (chi(mid) < 0.0)
                a = mid;
            else
                b = mid;
        }
        r.values.push_back(mid);
    }
    std::sort(r.values.begin(), r.values.end());

    r.degenerate = !reasons.empty();
    r.hyperbolic = !r.degenerate;
    for (std::size_t k = 0; k < reasons.size(); ++k) r.reason += (k ? "; " : "") + reasons[k];
    return r;
}

// ---------------------------------------------------------------- monitors

double prediction_entropy_residual(const Grid& g, const SimState& before, const PredictedState& p,
                                   const LayerConfig& layers, double gravity, double dt,
                                   double dry_height) {
    const int n = layers.size();
    const bool two_d = g.dim == 2;
    const double lx = dt / g.dx;
    const double ly = dt / g.dy;
    // Potential energy of height hh measured with the bottom of cell (i, j).
    auto ep = [&](double hh, int i, int j) {
        return 0.5 * gravity * hh * hh + gravity * hh * before.zb(i, j);
    };
    double worst = 0.0;
    for_each_cell(g, [&](int i, int j) {
        const double h = before.h(i, j);
        if (h < dry_height) return;
        double e0 = ep(h, i, j);
        double e1 = ep(p.h_half(i, j), i, j);
        // Net outgoing energy flux, weighted by λ.
        double flux = 0.0;
        double flux_scale = 0.0;
        auto potential = [&](double A, double lam, int i2, int j2, double sign) {
            const double f = -0.5 * A * (ep(before.h(i2, j2), i, j) - ep(h, i, j));
            flux += sign * lam * f;
            flux_scale += lam * std::abs(f);
        };
        potential(p.speed_x(i, j), lx, i + 1, j, 1.0);
        potential(p.speed_x(i - 1, j), lx, i - 1, j, 1.0);
        if (two_d) {
            potential(p.speed_y(i, j), ly, i, j + 1, 1.0);
            potential(p.speed_y(i, j - 1), ly, i, j - 1, 1.0);
        }
        for (int a = 0; a < n; ++a) {
            const auto k = static_cast<std::size_t>(a);
            const double ha = layers[a] * h;
            auto kinetic = [&](const Field& q) {
                e0 += 0.5 * ha * q(i, j) * q(i, j);
                auto face = [&](double F, double ql, double qr, double lam, double sign) {
                    const double f = 0.5 * (ql * ql * pos(F) - qr * qr * neg(F));
                    flux += sign * lam * f;
                    flux_scale += lam * std::abs(f);
                };
                face(p.flux_x[k](i, j), q(i, j), q(i + 1, j), lx, 1.0);
                face(p.flux_x[k](i - 1, j), q(i - 1, j), q(i, j), lx, -1.0);
                if (two_d) {
                    face(p.flux_y[k](i, j), q(i, j), q(i, j + 1), ly, 1.0);
                    face(p.flux_y[k](i, j - 1), q(i, j - 1), q(i, j), ly, -1.0);
                }
            };
            kinetic(before.u[k]);
            if (two_d) kinetic(before.v[k]);
            const double hs = p.h[k](i, j);
            if (hs > 0.0) {
                e1 += 0.5 * p.hu[k](i, j) * p.hu[k](i, j) / hs;
                if (two_d) e1 += 0.5 * p.hv[k](i, j) * p.hv[k](i, j) / hs;
            }
        }
        const double residual = e1 - (e0 - flux);
        worst = std::max(worst, relative(residual, std::abs(e0) + std::abs(e1) + flux_scale));
    });
    return worst;
}

double correction_entropy_residual(const Grid& g, const PredictedState& p, const SimState& after,
                                   const LayerConfig& layers, double dry_height) {
    const int n = layers.size();
    double worst = 0.0;
    for_each_cell(g, [&](int i, int j) {
        const double hh = p.h_half(i, j);
        if (hh < dry_height) return;
        double k0 = 0.0, k1 = 0.0;
        for (int a = 0; a < n; ++a) {
            const auto k = static_cast<std::size_t>(a);
            const double hs = p.h[k](i, j);
            if (hs > 0.0) {
                k0 += 0.5 * p.hu[k](i, j) * p.hu[k](i, j) / hs;
                if (!p.hv.empty()) k0 += 0.5 * p.hv[k](i, j) * p.hv[k](i, j) / hs;
            }
            const double u = after.u[k](i, j);
            k1 += 0.5 * layers[a] * hh * u * u;
            if (after.has_v()) k1 += 0.5 * layers[a] * hh * after.v[k](i, j) * after.v[k](i, j);
        }
        worst = std::max(worst, relative(k1 - k0, k0 + k1));
    });
    return worst;
}

double swe_entropy_residual(const Grid& g, const BarotropicFields& before,
                            const BarotropicFields& after, const Field& zb, double gravity,
                            double dt, double dry_height) {
    const bool two_d = g.dim == 2;
    auto vel = [&](const Field& hq, int i, int j) {
        return hq.empty() ? 0.0 : velocity(before.h(i, j), hq(i, j), dry_height);
    };
    auto eta = [&](double h, double un, double ut, double z) {
        return 0.5 * gravity * h * h + gravity * h * z + 0.5 * h * (un * un + ut * ut);
    };
    // Local Lax-Friedrichs entropy flux across the face between (i, j) and (i2, j2).
    auto psi = [&](int i, int j, int i2, int j2, bool x_normal) {
        const Field& qn = x_normal ? before.hu : before.hv;
        const Field& qt = x_normal ? before.hv : before.hu;
        const double unl = vel(qn, i, j), unr = vel(qn, i2, j2);
        const double utl = vel(qt, i, j), utr = vel(qt, i2, j2);
        const SweInterfaceFlux f = swe_flux(before.h(i, j), before.h(i2, j2), unl, unr, utl, utr,
                                            zb(i, j), zb(i2, j2), gravity);
        const double zs = std::max(zb(i, j), zb(i2, j2));
        const double el = eta(f.h_left, unl, utl, zs);
        const double er = eta(f.h_right, unr, utr, zs);
        const double gl = unl * (el + 0.5 * gravity * f.h_left * f.h_left);
        const double gr = unr * (er + 0.5 * gravity * f.h_right * f.h_right);
        return 0.5 * (gl + gr) - 0.5 * f.speed * (er - el);
    };
    auto cell_eta = [&](const BarotropicFields& b, int i, int j) {
        const double h = b.h(i, j);
        const double u = velocity(h, b.hu(i, j), dry_height);
        const double v = b.hv.empty() ? 0.0 : velocity(h, b.hv(i, j), dry_height);
        return eta(h, u, v, zb(i, j));
    };
    const double lx = dt / g.dx;
    const double ly = dt / g.dy;
    double worst = 0.0;
    for_each_cell(g, [&](int i, int j) {
        const double e0 = cell_eta(before, i, j);
        const double e1 = cell_eta(after, i, j);
        const double pe = psi(i, j, i + 1, j, true);
        const double pw = psi(i - 1, j, i, j, true);
        double div = lx * (pe - pw);
        double scale = lx * (std::abs(pe) + std::abs(pw));
        if (two_d) {
            const double pn = psi(i, j, i, j + 1, false);
            const double ps = psi(i, j - 1, i, j, false);
            div += ly * (pn - ps);
            scale += ly * (std::abs(pn) + std::abs(ps));
        }
        worst = std::max(worst, relative(e1 - (e0 - div), std::abs(e0) + std::abs(e1) + scale));
    });
    return worst;
}

double deviation_entropy_residual(const Grid& g, const Field& h_old, const AccumulatedMassFlux& acc,
                                  const Field& before, const Field& after, double dry_height) {
    const Field h_mass = accumulated_height(g, h_old, acc);
    auto psi = [](double F, double l, double r) { return l * l * pos(F) - r * r * neg(F); };
    double worst = 0.0;
    for_each_cell(g, [&](int i, int j) {
        const double hm = h_mass(i, j);
        if (hm < dry_height) return;
        const double q0 = h_old(i, j) * before(i, j) * before(i, j);
        const double q1 = hm * after(i, j) * after(i, j);
        const double fe = psi(acc.x(i, j), before(i, j), before(i + 1, j)) / g.dx;
        const double fw = psi(acc.x(i - 1, j), before(i - 1, j), before(i, j)) / g.dx;
        double div = fe - fw;
        double scale = std::abs(fe) + std::abs(fw);
        if (g.dim == 2) {
            const double fn = psi(acc.y(i, j), before(i, j), before(i, j + 1)) / g.dy;
            const double fs = psi(acc.y(i, j - 1), before(i, j - 1), before(i, j)) / g.dy;
            div += fn - fs;
            scale += std::abs(fn) + std::abs(fs);
        }
        worst = std::max(worst, relative(q1 - (q0 - div), q0 + q1 + scale));
    });
    return worst;
}

double prediction_max_principle_violation(const Grid& g, const SimState& before,
                                          const PredictedState& p, double dry_height) {
    const auto n = static_cast<std::size_t>(before.layers());
    double worst = 0.0;
    auto check = [&](const std::vector<Field>& q, const std::vector<Field>& hq) {
        for (std::size_t a = 0; a < n; ++a)
            for_each_cell(g, [&](int i, int j) {
                const double hs = p.h[a](i, j);
                if (before.h(i, j) < dry_height || hs <= 1e-12 * before.h(i, j)) return;
                const auto [lo, hi] = stencil_bounds(g, q[a], i, j);
                worst = std::max(worst, outside(hq[a](i, j) / hs, lo, hi));
            });
    };
    check(before.u, p.hu);
    if (before.has_v()) check(before.v, p.hv);
    check(before.T, p.hT);
    return worst;
}

double correction_max_principle_violation(const Grid& g, const PredictedState& p,
                                          const SimState& after, Correction kind,
                                          double dry_height) {
    const auto n = static_cast<std::size_t>(after.layers());
    std::vector<double> star(n);
    double worst = 0.0;
    auto check = [&](const std::vector<Field>& hq, const std::vector<Field>& q) {
        for_each_cell(g, [&](int i, int j) {
            if (p.h_half(i, j) < dry_height) return;
            for (std::size_t a = 0; a < n; ++a) {
                const double hs = p.h[a](i, j);
                star[a] = hs > 0.0 ? hq[a](i, j) / hs : 0.0;
            }
            for (std::size_t a = 0; a < n; ++a) {
                std::size_t first = 0, last = n - 1;
                if (kind == Correction::explicit_update) {
                    first = a > 0 ? a - 1 : 0;
                    last = std::min(a + 1, n - 1);
                }
                double lo = star[first], hi = star[first];
                for (std::size_t b = first; b <= last; ++b) {
                    // Layers emptied by the prediction carry no information.
                    if (p.h[b](i, j) <= 0.0) continue;
                    lo = std::min(lo, star[b]);
                    hi = std::max(hi, star[b]);
                }
                worst = std::max(worst, outside(q[a](i, j), lo, hi));
            }
        });
    };
    check(p.hu, after.u);
    if (after.has_v()) check(p.hv, after.v);
    check(p.hT, after.T);
    return worst;
}

double adjustment_max_principle_violation(const Grid& g, const Field& h_old,
                                          const AccumulatedMassFlux& acc, const Field& before,
                                          const Field& after, double dry_height) {
    const Field h_mass = accumulated_height(g, h_old, acc);
    double worst = 0.0;
    for_each_cell(g, [&](int i, int j) {
        if (h_mass(i, j) < dry_height) return;
        const auto [lo, hi] = stencil_bounds(g, before, i, j);
        worst = std::max(worst, outside(after(i, j), lo, hi));
    });
    return worst;
}

void InvariantMonitor::on_baroclinic(const SimState& before, const SimState& after,
                                     const BaroclinicOutcome& o) {
    const Model& m = model_;
    const Grid& g = m.grid;
    const double dry = m.scheme.dry_height;
    StageResiduals r;
    if (m.scheme.flux == MassFlux::rusanov)
        r.prediction_entropy = prediction_entropy_residual(g, before, o.predicted, m.layers,
                                                           m.scheme.gravity, o.dt, dry);
    r.prediction_max_principle = prediction_max_principle_violation(g, before, o.predicted, dry);
    r.correction_entropy = correction_entropy_residual(g, o.predicted, after, m.layers, dry);
    r.correction_max_principle =
        correction_max_principle_violation(g, o.predicted, after, m.scheme.correction, dry);
    r.exchange_closure = o.exchange.closure_residual;
    r_.merge(r);
}

void InvariantMonitor::on_substep(const Grid& g, const BarotropicFields& before,
                                  const BarotropicFields& after, const Field& zb,
                                  const SweTendency&, double dt) {
    if (model_.scheme.wb_geostrophic) return;
    r_.swe_entropy = std::max(r_.swe_entropy, swe_entropy_residual(g, before, after, zb,
                                                                   model_.scheme.gravity, dt,
                                                                   model_.scheme.dry_height));
}

void InvariantMonitor::on_flush(const Grid& g, const Field& h_old, const AccumulatedMassFlux& acc,
                                const std::vector<Field>& before,
                                const std::vector<Field>& after) {
    const double dry = model_.scheme.dry_height;
    for (std::size_t k = 0; k < before.size(); ++k) {
        r_.deviation_entropy = std::max(
            r_.deviation_entropy, deviation_entropy_residual(g, h_old, acc, before[k], after[k], dry));
        r_.adjustment_max_principle =
            std::max(r_.adjustment_max_principle,
                     adjustment_max_principle_violation(g, h_old, acc, before[k], after[k], dry));
    }
    // Deviations come first (x, then y in 2D), tracers last.
    const int n = model_.layers.size();
    const int blocks = g.dim == 2 ? 2 : 1;
    const Field h_mass = accumulated_height(g, h_old, acc);
    for (int b = 0; b < blocks; ++b)
        for_each_cell(g, [&](int i, int j) {
            if (h_mass(i, j) < dry) return;
            double s = 0.0;
            for (int a = 0; a < n; ++a)
                s += model_.layers[a] * after[static_cast<std::size_t>(b * n + a)](i, j);
            r_.deviation_sum = std::max(r_.deviation_sum, std::abs(s));
        });
}

void InvariantMonitor::on_step_end(const SimState& s) {
    r_.min_height = std::min(r_.min_height, interior_min(model_.grid, s.h));
    r_.deviation_sum =
        std::max(r_.deviation_sum, deviation_sum_residual(model_.grid, s, model_.layers));
}

// ---------------------------------------------------------------- norms

double l1_error(const Grid& g, const Field& numeric, const Field& reference) {
    if (numeric.nx() != g.nx || reference.nx() != g.nx || numeric.ny() != reference.ny())
        throw std::invalid_argument("l1_error: resolution mismatch");
    double s = 0.0;
    for_each_cell(g, [&](int i, int j) { s += std::abs(numeric(i, j) - reference(i, j)); });
    return s * g.cell_measure();
}

double l1_error(const Grid& g, const Field& numeric,
                const std::function<double(double, double)>& reference) {
    Field ref(g);
    for_each_cell(g, [&](int i, int j) { ref(i, j) = reference(g.xc(i), g.yc(j)); });
    return l1_error(g, numeric, ref);
}

EOCTable eoc(std::vector<int> resolutions, std::vector<std::string> variables,
             std::vector<std::vector<double>> errors) {
    if (variables.size() != errors.size())
        throw std::invalid_argument("eoc: variable/error count mismatch");
    for (const auto& e : errors)
        if (e.size() != resolutions.size())
            throw std::invalid_argument("eoc: error sequence does not match the resolutions");
    EOCTable t;
    t.resolutions = std::move(resolutions);
    t.variables = std::move(variables);
    t.errors = std::move(errors);
    for (const auto& e : t.errors) {
        std::vector<double> o;
        for (std::size_t k = 0; k + 1 < e.size(); ++k) {
            const double ratio = static_cast<double>(t.resolutions[k + 1]) / t.resolutions[k];
            o.push_back(std::log(e[k] / e[k + 1]) / std::log(ratio));
            if (!(e[k + 1] < e[k])) t.monotone = false;
        }
        t.orders.push_back(std::move(o));
    }
    return t;
}

std::string EOCTable::to_text() const {
    std::ostringstream os;
    os << std::setw(8) << "cells";
    for (const auto& v : variables) os << std::setw(14) << ("L1(" + v + ")") << std::setw(8) << "EOC";
    os << '\n';
    for (std::size_t k = 0; k < resolutions.size(); ++k) {
        os << std::setw(8) << resolutions[k];
        for (std::size_t v = 0; v < variables.size(); ++v) {
            os << std::setw(14) << std::scientific << std::setprecision(4) << errors[v][k];
            if (k == 0)
                os << std::setw(8) << "-";
            else
                os << std::setw(8) << std::fixed << std::setprecision(2) << orders[v][k - 1];
        }
        os << '\n';
    }
    if (!monotone) os << "warning: errors do not decrease monotonically\n";
    return os.str();
}

std::string EOCTable::to_csv() const {
    std::ostringstream os;
    os << "cells";
    for (const auto& v : variables) os << ",l1_" << v << ",eoc_" << v;
    os << '\n' << std::setprecision(17);
    for (std::size_t k = 0; k < resolutions.size(); ++k) {
        os << resolutions[k];
        for (std::size_t v = 0; v < variables.size(); ++v) {
            os << ',' << errors[v][k] << ',';
            if (k > 0) os << orders[v][k - 1];
        }
        os << '\n';
    }
    return os.str();
}

double tracer_l2(const Grid& g, const SimState& s, const LayerConfig& layers) {
    double sum = 0.0;
    for (int a = 0; a < layers.size(); ++a) {
        const Field& T = s.T[static_cast<std::size_t>(a)];
        for_each_cell(g, [&](int i, int j) { sum += layers[a] * s.h(i, j) * T(i, j) * T(i, j); });
    }
    return std::sqrt(sum * g.cell_measure());
}

double total_mass(const Grid& g, const SimState& s) { return integrate(g, s.h); }

std::pair<double, double> tracer_bounds(const Grid& g, const SimState& s) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& T : s.T) {
        lo = std::min(lo, interior_min(g, T));
        hi = std::max(hi, interior_max(g, T));
    }
    return {lo, hi};
}

double barotropic_defect(const Grid& g, const SimState& s, const LayerConfig& layers) {
    double worst = 0.0;
    auto scan = [&](const std::vector<Field>& q) {
        const Field mean = mean_velocity(q, layers);
        for (const auto& f : q)
            for_each_cell(g, [&](int i, int j) {
                worst = std::max(worst, std::abs(f(i, j) - mean(i, j)));
            });
    };
    scan(s.u);
    if (s.has_v()) scan(s.v);
    return worst;
}

}  // namespace mlsw
