#pragma once
/// @file barotropic.hpp
/// @brief Subcycled barotropic operator: one-layer shallow water on (h, hū, hv̄) and the
/// flux-accumulating adjustment of deviations and tracers.

#include <mlsw/core.hpp>
#include <mlsw/settings.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace mlsw {

/// Depth-integrated state of the barotropic subsystem. hv is empty in 1D.
struct BarotropicFields {
    Field h;
    Field hu;
    Field hv;
};

/// Interface flux of the hydrostatically reconstructed Rusanov scheme.
/// The cell left of the face receives −(mom_normal − p_left)/Δx, the cell on the right
/// receives +(mom_normal − p_right)/Δx; the pressure terms carry the topography source.
struct SweInterfaceFlux {
    double mass = 0.0;
    double mom_normal = 0.0;
    double mom_tangent = 0.0;
    double p_left = 0.0;
    double p_right = 0.0;
    double h_left = 0.0;   ///< reconstructed heights h*
    double h_right = 0.0;
    double speed = 0.0;    ///< Rusanov wave-speed bound
};

SweInterfaceFlux swe_flux(double h_left, double h_right, double un_left, double un_right,
                          double ut_left, double ut_right, double z_left, double z_right,
                          double gravity);

/// Rusanov flux of already reconstructed states (shared by the well-balanced variant).
SweInterfaceFlux rusanov_swe_flux(double h_left, double h_right, double un_left, double un_right,
                                  double ut_left, double ut_right, double gravity);
/// Same with a prescribed wave-speed bound.
SweInterfaceFlux rusanov_swe_flux(double h_left, double h_right, double un_left, double un_right,
                                  double ut_left, double ut_right, double gravity, double speed);

/// Cell tendencies and face mass fluxes of one substep (update is U + δt·tendency).
struct SweTendency {
    Field dh;
    Field dhu;
    Field dhv;
    Field mass_x;  ///< f^h on x-faces
    Field mass_y;
    std::int64_t flux_evaluations = 0;
};

BarotropicFields barotropic_fields(const Grid& g, const SimState& s, const LayerConfig& layers);
void fill_barotropic_ghosts(const Grid& g, BarotropicFields& b);
/// Velocity from momentum with the dry guard.
double velocity(double h, double hq, double dry_height);

/// CFL_bt / (max(|ū|+√(gh))/Δx + max(|v̄|+√(gh))/Δy) over wet cells; +∞ when all dry.
double barotropic_dt(const Grid& g, const BarotropicFields& b, double gravity, double cfl,
                     double dry_height);

/// Tendency of the hydrostatic-reconstruction Rusanov scheme. Ghosts of `b` and `zb` filled.
SweTendency swe_tendency(const Grid& g, const BarotropicFields& b, const Field& zb,
                         double gravity, double dry_height);

/// Face flux storage: x-face i+1/2 of row j, and y-face j+1/2 of column i.
std::size_t x_face_index(const Grid& g, int i, int j);
std::size_t y_face_index(const Grid& g, int i, int j);
/// Cell tendencies from face fluxes (pressure of the inner state carries the source).
SweTendency assemble_swe_tendency(const Grid& g, std::span<const SweInterfaceFlux> fx,
                                  std::span<const SweInterfaceFlux> fy);

/// U ← U + δt·tendency, clipping round-off negatives of h.
void apply_tendency(const Grid& g, BarotropicFields& b, const SweTendency& t, double dt,
                    double dry_height);

/// One substep with the standard flux: fills ghosts, updates b, returns the tendency.
SweTendency barotropic_substep(const Grid& g, BarotropicFields& b, const Field& zb,
                               double gravity, double dt, double dry_height);

/// Time-integrated barotropic mass flux Δt·𝓕^h per face.
struct AccumulatedMassFlux {
    Field x;
    Field y;
    double tau = 0.0;
    int substeps = 0;

    AccumulatedMassFlux() = default;
    explicit AccumulatedMassFlux(const Grid& g);
    void reset();
    void add(const Grid& g, const SweTendency& t, double dt);
};

/// h_j − Σ outgoing |candidate| / Δ ≥ 0 for candidate = acc + δt f.
bool nonnegativity_check(const Grid& g, const Field& h_old, const AccumulatedMassFlux& acc,
                         const SweTendency& t, double dt);

/// h_old − div(acc): the height implied by the accumulated flux.
Field accumulated_height(const Grid& g, const Field& h_old, const AccumulatedMassFlux& acc);

/// Decentered update (hφ)_new = h_old φ − div(φ_up Δt𝓕) and φ = (hφ)_new / h_mass.
/// Each entry of `phi` is paired with a parity used for its ghost cells.
void adjust_deviations(const Grid& g, std::vector<Field*> phi, const std::vector<Parity>& parity,
                       const Field& h_old, const AccumulatedMassFlux& acc, double dry_height);

/// Hooks for runtime verification of the barotropic window.
class BarotropicObserver {
public:
    virtual ~BarotropicObserver() = default;
    /// Called after each substep with the fields before and after it.
    virtual void on_substep(const Grid&, const BarotropicFields& /*before*/,
                            const BarotropicFields& /*after*/, const Field& /*zb*/,
                            const SweTendency&, double /*dt*/) {}
    /// Called after each flush with the adjusted quantities before and after it.
    virtual void on_flush(const Grid&, const Field& /*h_old*/, const AccumulatedMassFlux&,
                          const std::vector<Field>& /*before*/,
                          const std::vector<Field>& /*after*/) {}
};

struct BarotropicReport {
    int substeps = 0;
    int flushes = 0;
    std::int64_t flux_evaluations = 0;
};

/// Subcycles the shallow-water solver over the window Δt and adjusts deviations and
/// tracers (Algorithm with non-negativity checked flushes). Reassembles u_α = ū + σ_α.
BarotropicReport barotropic_loop(const Model& m, SimState& s, double dt,
                                 BarotropicObserver* observer = nullptr);

}  // namespace mlsw
