#include <mlsw/settings.hpp>

namespace mlsw {

Model::Model(Grid g, LayerConfig l, SchemeConfig s, PhysicsConfig p)
    : grid(g), layers(std::move(l)), scheme(s), physics(p) {
    if (physics.coriolis) coriolis = coriolis_field(grid, physics);
}

Field coriolis_field(const Grid& g, const PhysicsConfig& p) {
    Field f(g);
    const int gy = g.ghost_y();
    for (int j = -gy; j < g.ny + gy; ++j)
        for (int i = -1; i <= g.nx; ++i) f(i, j) = p.f0 + p.beta0 * g.yc(j);
    return f;
}

}  // namespace mlsw
