#pragma once
/// @file splitting.hpp
/// @brief Time stepping: the barotropic-baroclinic split step, the unsplit reference step
/// and the run driver.

#include <mlsw/analysis.hpp>
#include <mlsw/core.hpp>
#include <mlsw/report.hpp>
#include <mlsw/settings.hpp>

#include <functional>
#include <limits>
#include <vector>

namespace mlsw {

/// Baroclinic step, barotropic subcycling, then physics. The step is the smallest of the
/// baroclinic CFL step, scheme.max_subcycles barotropic CFL steps, `dt_cap`, scheme.dt_max
/// and the physics bound.
StepReport split_step(SimState& s, const Model& m,
                      double dt_cap = std::numeric_limits<double>::infinity(),
                      InvariantMonitor* monitor = nullptr);

/// One small step of the full multilayer system followed by the exchange closure.
StepReport unsplit_step(SimState& s, const Model& m,
                        double dt_cap = std::numeric_limits<double>::infinity());

/// Dispatch on m.scheme.kind.
StepReport step(SimState& s, const Model& m,
                double dt_cap = std::numeric_limits<double>::infinity(),
                InvariantMonitor* monitor = nullptr);

/// Largest admissible unsplit step: CFL_bt / (max(|u_α|+√(gh))/Δx + max(|v_α|+√(gh))/Δy).
double unsplit_dt(const Model& m, const SimState& s);

struct RunOptions {
    double t_final = 0.0;
    double output_interval = 0.0;  ///< ≤ 0: initial and final snapshots only
    bool monitor = false;          ///< attach the invariant monitor to split steps
    std::size_t max_steps = std::numeric_limits<std::size_t>::max();
};

struct RunResult {
    CostTotals totals;
    StageResiduals invariants;  ///< worst values over the run (monitor on)
    std::size_t snapshots = 0;
    double wall_seconds = 0.0;
};

using SnapshotSink = std::function<void(const SimState&)>;
using StepHook = std::function<void(const SimState&, const StepReport&)>;

/// Advance to t_final, clipping steps to land on every output time and on t_final.
RunResult run(const Model& m, SimState& s, const RunOptions& opt, const SnapshotSink& sink = {},
              const StepHook& hook = {});

}  // namespace mlsw
