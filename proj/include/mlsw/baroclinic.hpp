#pragma once
/// @file baroclinic.hpp
/// @brief Large-step baroclinic operator: prediction, exchange terms and correction.

#include <mlsw/core.hpp>
#include <mlsw/settings.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace mlsw {

/// Result of the prediction without mass exchange.
struct PredictedState {
    std::vector<Field> h;   ///< h_α★
    std::vector<Field> hu;  ///< (h_α u_α)★
    std::vector<Field> hv;  ///< (h_α v_α)★, 2D only
    std::vector<Field> hT;  ///< (h_α T_α)★
    Field h_half;           ///< Σ_α h_α★
    std::vector<Field> flux_x;  ///< F^{h_α} on x-faces, entry i is face i+1/2
    std::vector<Field> flux_y;  ///< F^{h_α} on y-faces, 2D only
    Field speed_x;          ///< Rusanov A per x-face (0 for the height-upwind flux)
    Field speed_y;
    std::int64_t flux_evaluations = 0;
};

/// Interface exchange rates G_{α+1/2}, α = 0..N (bottom and top are zero).
struct ExchangeField {
    std::vector<Field> G;
    double closure_residual = 0.0;  ///< largest computed |G_{N+1/2}| before it is zeroed
};

double rusanov_mass_flux(double h_left, double sigma_left, double h_right, double sigma_right,
                         double speed);
double upwind_height_mass_flux(double h_left, double sigma_left, double h_right,
                               double sigma_right);
/// φ_L F⁺ − φ_R F⁻.
double transported_flux(double flux, double phi_left, double phi_right);
/// φ_{α+1/2}: lower value when G ≤ 0, upper value when G > 0.
double interface_upwind(double lower, double upper, double G);

/// Per-layer Rusanov fluxes at one interface; A is the max |σ| over layers and sides.
void rusanov_mass_flux(std::span<const double> h_left, std::span<const double> sigma_left,
                       std::span<const double> h_right, std::span<const double> sigma_right,
                       std::span<double> out);

/// CFL_bc / (max|σˣ|/Δx + max|σʸ|/Δy) over wet cells; +∞ for a barotropic state.
double baroclinic_dt(const Grid& g, const SimState& s, const LayerConfig& layers,
                     const SchemeConfig& scheme);

/// Largest Δt for which the chosen mass flux keeps h_α★ ≥ 0.
double prediction_positivity_bound(const Grid& g, const SimState& s, const LayerConfig& layers,
                                   MassFlux flux);

/// Conservative update of (h_α, h_α u_α, h_α T_α) with deviation-driven fluxes.
/// Ghost cells of `s` must be filled. Throws CflViolation above the positivity bound.
PredictedState prediction_step(const Grid& g, const SimState& s, const LayerConfig& layers,
                               MassFlux flux, double dt);

/// Column recursion G_{α+1/2} = (l_α h^{n+1/2} − h_α★)/Δt + G_{α−1/2}; returns N+1 values
/// including the computed (unzeroed) top value.
std::vector<double> exchange_column(std::span<const double> h_star, double h_half,
                                    const LayerConfig& layers, double dt);

ExchangeField exchange_terms(const Grid& g, const PredictedState& p, const LayerConfig& layers,
                             double dt, double dry_height);

/// Column update (h_α φ)^{n+1/2} = (h_α φ)★ + Δt(φ_{α+1/2}G_{α+1/2} − φ_{α−1/2}G_{α−1/2})
/// with interface values taken from φ★; divides by h_new[α] = l_α h^{n+1/2}.
void correct_column_explicit(std::span<const double> hphi_star, std::span<const double> phi_star,
                             std::span<const double> G, std::span<const double> h_new, double dt,
                             std::span<double> phi_out);
/// Same balance with interface values taken from the unknowns (tridiagonal solve).
void correct_column_implicit(std::span<const double> hphi_star, std::span<const double> G,
                             std::span<const double> h_new, double dt, std::span<double> phi_out);

struct CorrectionCheck {
    bool ok = true;
    double worst_ratio = 0.0;  ///< max outflow / available height
};

/// Δt(G⁻_{α+1/2} + G⁺_{α−1/2}) against both l_α h^{n+1/2} and h_α★.
CorrectionCheck check_correction_cfl(const Grid& g, const PredictedState& p,
                                     const ExchangeField& ex, const LayerConfig& layers,
                                     double dt, double dry_height);

/// Writes h = h^{n+1/2} and corrected u, v, T into `out` (interior cells).
void apply_correction(const Grid& g, const PredictedState& p, const ExchangeField& ex,
                      const LayerConfig& layers, double dt, Correction kind, double dry_height,
                      SimState& out);

struct BaroclinicOutcome {
    double dt = 0.0;
    int halvings = 0;
    std::int64_t flux_evaluations = 0;
    PredictedState predicted;
    ExchangeField exchange;
};

/// Prediction, exchange and correction with the a-posteriori halving protocol.
/// `s` holds the state at t^n on entry and the state at n+1/2 on exit.
BaroclinicOutcome baroclinic_step(const Grid& g, SimState& s, const LayerConfig& layers,
                                  const SchemeConfig& scheme, double dt);

}  // namespace mlsw
