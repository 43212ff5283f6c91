#pragma once
/// @file scenarios.hpp
/// @brief Initial-condition generators for the reference experiments.
///
/// Scenarios: `euler` (stationary hydrostatic Euler flow over a bump), `wind_cavity`,
/// `volcano` (2D lake at rest with wet/dry areas), `stommel` (wind-driven beta-plane
/// basin), `dam_break`, `lake` (1D lake at rest over a bump) and `geostrophic`
/// (linear-velocity f-plane equilibrium).

#include <mlsw/config.hpp>
#include <mlsw/core.hpp>
#include <mlsw/settings.hpp>

#include <optional>
#include <string>
#include <vector>

namespace mlsw {

/// Stationary solution of the hydrostatic Euler equations in (x, z):
/// h(x) = h_base − h_bump e^{−x²}, z_b = z̄_b − h − α²β²/(2g sin²(βh)),
/// u(x, z) = αβ cos(β(z − z_b)) / sin(βh).
struct EulerSolution {
    double alpha = 0.1;
    double beta = 1.0;
    double zbar = 2.0;
    double h_base = 2.0;
    double h_bump = 1.0;
    double gravity = 9.81;

    [[nodiscard]] double h(double x) const;
    [[nodiscard]] double zb(double x) const;
    [[nodiscard]] double u(double x, double z) const;
    /// Average of u over layer a (3-point Gauss–Legendre in z).
    [[nodiscard]] double layer_velocity(double x, int a, const LayerConfig& layers) const;
};

struct Scenario {
    std::string name;
    Model model;
    SimState state;
    double t_final = 0.0;
    std::optional<EulerSolution> euler;
};

/// Names accepted by build_scenario.
std::vector<std::string> scenario_names();

/// Build model and initial state from a spec; scenario defaults are overridden by every
/// value set in the spec. Throws ConfigError on unknown names, parameters or invalid data.
Scenario build_scenario(const ScenarioSpec& spec);

SimState init_analytical_euler(const Grid& g, const LayerConfig& layers, const EulerSolution& e,
                               double tracer_left, double tracer_right);
SimState init_wind_cavity(const Grid& g, const LayerConfig& layers);
SimState init_volcano_lake(const Grid& g, const LayerConfig& layers);
SimState init_stommel(const Grid& g, const LayerConfig& layers, double depth);

/// Volcano topography and initial depth at a point.
double volcano_bottom(double x, double y);
double volcano_depth(double x, double y);

/// Surface stress profile τˣ(y) = −F cos(π y / L) in N/m².
double stommel_stress(double F, double L, double y);

/// L¹ errors of h and of the layer velocities (Σ_α l_α ‖u_α − u_ref,α‖₁) against the
/// stationary Euler solution.
struct EulerErrors {
    double h = 0.0;
    double u = 0.0;
};
EulerErrors euler_errors(const Scenario& sc, const SimState& s);

}  // namespace mlsw
