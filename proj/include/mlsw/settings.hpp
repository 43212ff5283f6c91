#pragma once
/// @file settings.hpp
/// @brief Scheme and physics parameters plus the bundled model description.

#include <mlsw/core.hpp>
#include <mlsw/grid.hpp>

#include <limits>

namespace mlsw {

enum class SchemeKind { split, unsplit };
enum class MassFlux { rusanov, height_upwind };
enum class Correction { explicit_update, implicit_update };

struct SchemeConfig {
    SchemeKind kind = SchemeKind::split;
    MassFlux flux = MassFlux::rusanov;
    Correction correction = Correction::implicit_update;
    bool subcycling = true;
    bool wb_geostrophic = false;
    double cfl_baroclinic = 0.45;
    double cfl_barotropic = 0.45;
    double gravity = 9.81;
    double dry_height = 1e-10;
    double dt_max = std::numeric_limits<double>::infinity();
    int max_halvings = 20;
    double max_subcycles = 1000.0;  ///< large step is at most this many barotropic CFL steps

    friend bool operator==(const SchemeConfig&, const SchemeConfig&) = default;
};

/// Forcing and dissipation. Coefficients in SI units with ρ₀ = 1.
struct PhysicsConfig {
    bool vertical = false;
    double nu = 0.0;               ///< vertical viscosity (m²/s)
    double friction = 0.0;         ///< bottom Navier friction κ (m/s)
    double wind_coefficient = 0.0; ///< surface Robin coefficient (m/s)
    double wind_u = 0.0;           ///< wind velocity components (m/s)
    double wind_v = 0.0;
    double stress_amplitude = 0.0; ///< F in τˣ = −F cos(π y / L) (N/m²)
    double stress_length = 0.0;    ///< L (m); stress disabled when 0
    double water_density = 1000.0; ///< ρ_w used to turn stress into acceleration

    bool horizontal = false;
    double nu_hor = 0.0;

    bool coriolis = false;
    double f0 = 0.0;
    double beta0 = 0.0;

    friend bool operator==(const PhysicsConfig&, const PhysicsConfig&) = default;
};

struct Model {
    Grid grid;
    LayerConfig layers;
    SchemeConfig scheme;
    PhysicsConfig physics;
    Field coriolis;  ///< f per cell; empty when Coriolis is off

    Model() = default;
    Model(Grid g, LayerConfig l, SchemeConfig s, PhysicsConfig p);
};

/// f = f₀ + β₀ y at cell centres (ghosts filled by copy).
Field coriolis_field(const Grid& g, const PhysicsConfig& p);

}  // namespace mlsw
