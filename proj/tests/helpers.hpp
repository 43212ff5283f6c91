#pragma once
/// @file helpers.hpp
/// @brief Small state builders shared by the unit tests.

#include <mlsw/core.hpp>
#include <mlsw/grid.hpp>
#include <mlsw/settings.hpp>

#include <random>
#include <vector>

namespace testing {

using namespace mlsw;

/// Periodic 1D grid on [0, nx·dx].
inline Grid periodic_line(int nx, double dx = 1.0) {
    return Grid::line(nx, 0.0, nx * dx, Boundary::periodic, Boundary::periodic);
}

inline Model make_model(const Grid& g, const LayerConfig& l, SchemeConfig s = {},
                        PhysicsConfig p = {}) {
    return Model(g, l, s, p);
}

/// Random wet state: h in [0.5, 2], u in [−1, 1], T in [0, 1]; optional random bottom.
inline SimState random_state(const Grid& g, int n, std::mt19937& rng, bool bottom = false) {
    std::uniform_real_distribution<double> H(0.5, 2.0), U(-1.0, 1.0), T(0.0, 1.0), Z(0.0, 0.3);
    SimState s = make_state(g, n);
    for_each_cell(g, [&](int i, int j) {
        s.h(i, j) = H(rng);
        if (bottom) s.zb(i, j) = Z(rng);
        for (int a = 0; a < n; ++a) {
            s.u[static_cast<std::size_t>(a)](i, j) = U(rng);
            if (s.has_v()) s.v[static_cast<std::size_t>(a)](i, j) = U(rng);
            s.T[static_cast<std::size_t>(a)](i, j) = T(rng);
        }
    });
    apply_boundary(g, s);
    return s;
}

/// Random partition of unity with n entries, each at least 0.05.
inline LayerConfig random_layers(int n, std::mt19937& rng) {
    std::uniform_real_distribution<double> W(0.05, 1.0);
    std::vector<double> w(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (auto& x : w) sum += (x = W(rng));
    for (auto& x : w) x /= sum;
    return LayerConfig(w);
}

}  // namespace testing
