#pragma once
/// @file report.hpp
/// @brief Per-step reports, invariant residuals and cost counters.

#include <cstdint>
#include <limits>
#include <optional>
#include <span>

namespace mlsw {

/// Worst residual of each runtime check (0 means satisfied; entropy residuals are
/// relative to the local energy scale, maximum-principle residuals to the data range).
struct StageResiduals {
    double prediction_entropy = 0.0;
    double correction_entropy = 0.0;
    double swe_entropy = 0.0;
    double deviation_entropy = 0.0;
    double prediction_max_principle = 0.0;
    double correction_max_principle = 0.0;
    double adjustment_max_principle = 0.0;
    double deviation_sum = 0.0;
    double exchange_closure = 0.0;
    double min_height = std::numeric_limits<double>::infinity();

    void merge(const StageResiduals& o);
    [[nodiscard]] double worst_entropy() const;
    [[nodiscard]] double worst_max_principle() const;
};

struct StepReport {
    double dt = 0.0;
    int substeps = 0;
    int halvings = 0;
    int flushes = 0;
    std::int64_t multilayer_flux_evaluations = 0;
    std::int64_t swe_flux_evaluations = 0;
    std::optional<StageResiduals> invariants;
};

struct CostTotals {
    std::int64_t steps = 0;
    std::int64_t substeps = 0;
    std::int64_t multilayer_flux_evaluations = 0;
    std::int64_t swe_flux_evaluations = 0;
    double wall_seconds = 0.0;

    void add(const StepReport& r);
};

CostTotals cost_counters(std::span<const StepReport> reports, double wall_seconds = 0.0);

}  // namespace mlsw
