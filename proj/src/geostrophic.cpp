#include <mlsw/geostrophic.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace mlsw {

namespace {

bool has_east(const Grid& g, int i) { return i + 1 < g.nx || g.east == Boundary::periodic; }
bool has_west(const Grid& g, int i) { return i > 0 || g.west == Boundary::periodic; }
bool has_north(const Grid& g, int j) { return j + 1 < g.ny || g.north == Boundary::periodic; }
bool has_south(const Grid& g, int j) { return j > 0 || g.south == Boundary::periodic; }

double slope(bool lo_ok, bool hi_ok, double lo, double mid, double hi, double d) {
    if (lo_ok && hi_ok) return (hi - lo) / (2.0 * d);
    if (hi_ok) return (hi - mid) / d;
    if (lo_ok) return (mid - lo) / d;
    return 0.0;
}

}  // namespace

void fit_divergence_free(std::span<const NeighbourSample> samples, double& A, double& B,
                         double& C) {
    // Residuals du − (ox A + oy B), dv − (−oy A + ox C); normal equations in (A, B, C).
    std::array<std::array<double, 3>, 3> m{};
    std::array<double, 3> r{};
    for (const auto& s : samples) {
        const std::array<double, 3> a1{s.ox, s.oy, 0.0};
        const std::array<double, 3> a2{-s.oy, 0.0, s.ox};
        for (int p = 0; p < 3; ++p) {
            for (int q = 0; q < 3; ++q) m[p][q] += a1[p] * a1[q] + a2[p] * a2[q];
            r[p] += a1[p] * s.du + a2[p] * s.dv;
        }
    }
    auto det3 = [](const std::array<std::array<double, 3>, 3>& a) {
        return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
               a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
               a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    };
    const double d = det3(m);
    if (d == 0.0) {
        A = B = C = 0.0;
        return;
    }
    std::array<double, 3> x{};
    for (int k = 0; k < 3; ++k) {
        auto mk = m;
        for (int p = 0; p < 3; ++p) mk[p][k] = r[p];
        x[k] = det3(mk) / d;
    }
    A = x[0];
    B = x[1];
    C = x[2];
}

GeostrophicReconstruction geostrophic_reconstruct(const Grid& g, const Field& h, const Field& u,
                                                  const Field& v, const Field& zb, const Field& f,
                                                  double gravity, double dry_height) {
    GeostrophicReconstruction r;
    for (Field* p : {&r.M, &r.N, &r.A, &r.B, &r.C, &r.alpha, &r.beta, &r.gamma, &r.delta, &r.lambda})
        *p = Field(g);
    std::vector<NeighbourSample> samples;
    for_each_cell(g, [&](int i, int j) {
        const bool e = has_east(g, i), w = has_west(g, i), n = has_north(g, j), s = has_south(g, j);
        r.M(i, j) = slope(w, e, zb(i - 1, j), zb(i, j), zb(i + 1, j), g.dx);
        r.N(i, j) = slope(s, n, zb(i, j - 1), zb(i, j), zb(i, j + 1), g.dy);
        double A = 0.0, B = 0.0, C = 0.0;
        if (h(i, j) >= dry_height) {
            samples.clear();
            auto add = [&](int di, int dj, double ox, double oy) {
                samples.push_back({ox, oy, u(i + di, j + dj) - u(i, j), v(i + di, j + dj) - v(i, j)});
            };
            if (e) add(1, 0, g.dx, 0.0);
            if (w) add(-1, 0, -g.dx, 0.0);
            if (n) add(0, 1, 0.0, g.dy);
            if (s) add(0, -1, 0.0, -g.dy);
            fit_divergence_free(samples, A, B, C);
        }
        r.A(i, j) = A;
        r.B(i, j) = B;
        r.C(i, j) = C;
        const double fg = f(i, j) / gravity;
        r.alpha(i, j) = fg * v(i, j) - r.M(i, j);
        r.beta(i, j) = -fg * u(i, j) - r.N(i, j);
        r.gamma(i, j) = 0.5 * fg * C;
        r.delta(i, j) = -0.5 * fg * B;
        r.lambda(i, j) = -fg * A;
    });
    return r;
}

ReconstructedPoint evaluate(const GeostrophicReconstruction& r, const Field& h, const Field& u,
                            const Field& v, const Field& zb, int i, int j, double ox, double oy) {
    ReconstructedPoint p;
    p.h = h(i, j) + r.alpha(i, j) * ox + r.beta(i, j) * oy + r.gamma(i, j) * ox * ox +
          r.delta(i, j) * oy * oy + r.lambda(i, j) * ox * oy;
    p.u = u(i, j) + r.A(i, j) * ox + r.B(i, j) * oy;
    p.v = v(i, j) + r.C(i, j) * ox - r.A(i, j) * oy;
    p.b = zb(i, j) + r.M(i, j) * ox + r.N(i, j) * oy;
    return p;
}

SweTendency wb_swe_tendency(const Grid& g, const BarotropicFields& b, const Field& zb,
                            const Field& f, double gravity, double dry_height) {
    Field u(g), v(g);
    for_each_cell(g, [&](int i, int j) {
        u(i, j) = velocity(b.h(i, j), b.hu(i, j), dry_height);
        v(i, j) = velocity(b.h(i, j), b.hv(i, j), dry_height);
    });
    fill_ghosts(g, u, Parity::odd_x);
    fill_ghosts(g, v, Parity::odd_y);
    const GeostrophicReconstruction r =
        geostrophic_reconstruct(g, b.h, u, v, zb, f, gravity, dry_height);
    auto at = [&](int i, int j, double ox, double oy) {
        ReconstructedPoint p = evaluate(r, b.h, u, v, zb, i, j, ox, oy);
        p.h = std::max(0.0, p.h);
        return p;
    };
    auto face = [&](const ReconstructedPoint& L, const ReconstructedPoint& R, bool x_normal) {
        const double zs = std::max(L.b, R.b);
        const double hl = std::max(0.0, L.h + L.b - zs);
        const double hr = std::max(0.0, R.h + R.b - zs);
        return x_normal ? rusanov_swe_flux(hl, hr, L.u, R.u, L.v, R.v, gravity)
                        : rusanov_swe_flux(hl, hr, L.v, R.v, L.u, R.u, gravity);
    };
    auto mirror = [](ReconstructedPoint p, Boundary bc, bool x_normal) {
        if (bc == Boundary::wall) (x_normal ? p.u : p.v) = -(x_normal ? p.u : p.v);
        return p;
    };

    const double hx = 0.5 * g.dx;
    const double hy = 0.5 * g.dy;
    std::vector<SweInterfaceFlux> fx(static_cast<std::size_t>(g.nx + 1) * static_cast<std::size_t>(g.ny));
    for (int j = 0; j < g.ny; ++j)
        for (int i = -1; i < g.nx; ++i) {
            ReconstructedPoint L, R;
            if (i >= 0) L = at(i, j, hx, 0.0);
            if (i + 1 < g.nx) R = at(i + 1, j, -hx, 0.0);
            if (i < 0)
                L = g.west == Boundary::periodic ? at(g.nx - 1, j, hx, 0.0) : mirror(R, g.west, true);
            if (i + 1 >= g.nx)
                R = g.east == Boundary::periodic ? at(0, j, -hx, 0.0) : mirror(L, g.east, true);
            fx[x_face_index(g, i, j)] = face(L, R, true);
        }
    std::vector<SweInterfaceFlux> fy(static_cast<std::size_t>(g.nx) * static_cast<std::size_t>(g.ny + 1));
    for (int j = -1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            ReconstructedPoint L, R;
            if (j >= 0) L = at(i, j, 0.0, hy);
            if (j + 1 < g.ny) R = at(i, j + 1, 0.0, -hy);
            if (j < 0)
                L = g.south == Boundary::periodic ? at(i, g.ny - 1, 0.0, hy) : mirror(R, g.south, false);
            if (j + 1 >= g.ny)
                R = g.north == Boundary::periodic ? at(i, 0, 0.0, -hy) : mirror(L, g.north, false);
            fy[y_face_index(g, i, j)] = face(L, R, false);
        }
    return assemble_swe_tendency(g, fx, fy);
}

}  // namespace mlsw
