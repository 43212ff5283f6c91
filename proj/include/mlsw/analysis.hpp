#pragma once
/// @file analysis.hpp
/// @brief Eigenstructure of both subsystems, runtime invariant monitors, error norms,
/// convergence tables and tracer norms.

#include <mlsw/baroclinic.hpp>
#include <mlsw/barotropic.hpp>
#include <mlsw/core.hpp>
#include <mlsw/report.hpp>
#include <mlsw/settings.hpp>

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace mlsw {

// ---------------------------------------------------------------- eigenvalues

struct EigenReport {
    std::vector<double> values;     ///< sorted ascending, with multiplicity
    bool hyperbolic = true;         ///< strictly hyperbolic (distinct real eigenvalues)
    bool degenerate = false;
    std::string reason;             ///< empty unless degenerate
};

/// {ū − √(gh), ū (N−1 times), ū + √(gh)}.
EigenReport barotropic_eigenvalues(double h, double ubar, double gravity, int layers);

/// φ(λ) = 1 − Σ σ_α ℓ_α / (σ_α − λ).
double characteristic_function(std::span<const double> ell, std::span<const double> sigma,
                               double lambda);

/// Eigenvalues of the exchange-free baroclinic system for layer heights h_α and
/// velocities u_α: the deviations σ_α plus the N roots of φ.
EigenReport baroclinic_eigenvalues(std::span<const double> h_layers,
                                   std::span<const double> u_layers);

// ---------------------------------------------------------------- monitors

/// Worst relative residual of the prediction energy inequality (Rusanov mass flux).
/// `before` must have its ghost cells filled.
double prediction_entropy_residual(const Grid& g, const SimState& before, const PredictedState& p,
                                   const LayerConfig& layers, double gravity, double dt,
                                   double dry_height);

/// Worst relative growth of column kinetic energy through the correction.
double correction_entropy_residual(const Grid& g, const PredictedState& p, const SimState& after,
                                   const LayerConfig& layers, double dry_height);

/// Worst relative residual of the shallow-water substep entropy inequality with the
/// local Lax-Friedrichs entropy flux. `before` must have its ghosts filled.
double swe_entropy_residual(const Grid& g, const BarotropicFields& before,
                            const BarotropicFields& after, const Field& zb, double gravity,
                            double dt, double dry_height);

/// Worst relative residual of the decentered φ² inequality for one flush.
double deviation_entropy_residual(const Grid& g, const Field& h_old, const AccumulatedMassFlux& acc,
                                  const Field& before, const Field& after, double dry_height);

/// Worst violation of the stencil bounds u★, T★ ∈ [min, max] over the neighbouring cells.
double prediction_max_principle_violation(const Grid& g, const SimState& before,
                                          const PredictedState& p, double dry_height);

/// Worst violation of the column bounds of the correction (adjacent layers for the
/// explicit update, the whole column for the implicit one).
double correction_max_principle_violation(const Grid& g, const PredictedState& p,
                                          const SimState& after, Correction kind,
                                          double dry_height);

/// Worst violation of the neighbour bounds of one adjusted quantity.
double adjustment_max_principle_violation(const Grid& g, const Field& h_old,
                                          const AccumulatedMassFlux& acc, const Field& before,
                                          const Field& after, double dry_height);

/// Collects the residuals of every stage of a split step.
class InvariantMonitor : public BarotropicObserver {
public:
    InvariantMonitor(const Model& m) : model_(m) {}

    void on_baroclinic(const SimState& before, const SimState& after,
                       const BaroclinicOutcome& outcome);
    void on_substep(const Grid& g, const BarotropicFields& before, const BarotropicFields& after,
                    const Field& zb, const SweTendency& t, double dt) override;
    void on_flush(const Grid& g, const Field& h_old, const AccumulatedMassFlux& acc,
                  const std::vector<Field>& before, const std::vector<Field>& after) override;
    void on_step_end(const SimState& s);

    [[nodiscard]] const StageResiduals& residuals() const { return r_; }
    void reset() { r_ = {}; }

private:
    const Model& model_;
    StageResiduals r_;
};

// ---------------------------------------------------------------- norms

/// Σ |f − ref| · cell measure over interior cells.
double l1_error(const Grid& g, const Field& numeric, const Field& reference);
double l1_error(const Grid& g, const Field& numeric,
                const std::function<double(double, double)>& reference);

/// Convergence table; errors[v][k] belongs to variable v at resolutions[k].
struct EOCTable {
    std::vector<int> resolutions;
    std::vector<std::string> variables;
    std::vector<std::vector<double>> errors;
    std::vector<std::vector<double>> orders;  ///< orders[v][k] between k and k+1
    bool monotone = true;                     ///< every error sequence decreases

    [[nodiscard]] std::string to_text() const;
    [[nodiscard]] std::string to_csv() const;
};

/// Orders log(e_k/e_{k+1}) / log(n_{k+1}/n_k); throws std::invalid_argument on size mismatch.
EOCTable eoc(std::vector<int> resolutions, std::vector<std::string> variables,
             std::vector<std::vector<double>> errors);

/// sqrt(Σ_j Σ_α l_α h_j T_α² · cell measure).
double tracer_l2(const Grid& g, const SimState& s, const LayerConfig& layers);

/// Total water volume Σ h · cell measure.
double total_mass(const Grid& g, const SimState& s);

/// Smallest and largest tracer value over all layers and interior cells.
std::pair<double, double> tracer_bounds(const Grid& g, const SimState& s);

/// max_{α,j} |u_α − ū| (and v).
double barotropic_defect(const Grid& g, const SimState& s, const LayerConfig& layers);

}  // namespace mlsw
