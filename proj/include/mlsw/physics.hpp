#pragma once
/// @file physics.hpp
/// @brief Vertical and horizontal viscosity, wind forcing, bottom friction and Coriolis.

#include <mlsw/barotropic.hpp>
#include <mlsw/core.hpp>
#include <mlsw/settings.hpp>

#include <span>

namespace mlsw {

/// Surface forcing of one velocity component: flux κ_s (target − u_N) + stress.
struct SurfaceForcing {
    double coefficient = 0.0;
    double target = 0.0;
    double stress = 0.0;  ///< prescribed kinematic stress (m²/s²)
};

/// Backward-Euler diffusion across layers of thickness dz with conductances
/// ν / (distance between layer centres), bottom flux −κ u₁ and the surface forcing.
void vertical_viscosity_column(std::span<double> u, std::span<const double> dz, double nu,
                               double bottom_friction, const SurfaceForcing& top, double dt);

/// Kinematic surface stress τˣ/ρ_w at height y (zero when disabled).
double surface_stress_x(const PhysicsConfig& p, double y);

void vertical_viscosity_step(const Model& m, SimState& s, double dt);

/// 0.25 min(Δx, Δy)² / ν_hor.
double horizontal_viscosity_bound(const Grid& g, double nu_hor);
/// Explicit flux-form Laplacian of each u_α (and v_α) weighted by the smaller face height.
void horizontal_viscosity_step(const Model& m, SimState& s, double dt);

/// Exact rotation of (x, y) by the angle −θ.
void rotate(double& x, double& y, double theta);
/// Rotates (hū, hv̄) cell by cell with angle f·δt.
void coriolis_mean_step(const Grid& g, BarotropicFields& b, const Field& f, double dt);
/// Rotates each deviation pair (σˣ_α, σʸ_α) with angle f·Δt, keeping the means.
void coriolis_deviation_step(const Model& m, SimState& s, double dt);

/// Physics after the transport operators: vertical, horizontal, Coriolis on deviations.
void apply_physics(const Model& m, SimState& s, double dt, bool rotate_deviations);

/// Largest step allowed by the enabled explicit physics (+∞ if unconstrained).
double physics_dt_bound(const Model& m);

}  // namespace mlsw
