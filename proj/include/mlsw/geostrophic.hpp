#pragma once
/// @file geostrophic.hpp
/// @brief Reconstruction preserving linear geostrophic equilibria on (h, ū, v̄).

#include <mlsw/barotropic.hpp>
#include <mlsw/grid.hpp>

namespace mlsw {

/// Per-cell coefficients. With offsets (ξ, η) from the cell centre:
///   u^R = u + A ξ + B η,  v^R = v + C ξ − A η,  b^R = b + M ξ + N η,
///   h^R = h + α ξ + β η + γ ξ² + δ η² + λ ξ η.
struct GeostrophicReconstruction {
    Field M, N;
    Field A, B, C;
    Field alpha, beta, gamma, delta, lambda;
};

/// Point values of one cell's reconstruction.
struct ReconstructedPoint {
    double h = 0.0;
    double u = 0.0;
    double v = 0.0;
    double b = 0.0;
};

/// Least-squares fit (A, B, C) of a divergence-free linear field to available edge
/// neighbours; offsets and velocity differences per neighbour.
struct NeighbourSample {
    double ox = 0.0;
    double oy = 0.0;
    double du = 0.0;
    double dv = 0.0;
};
void fit_divergence_free(std::span<const NeighbourSample> samples, double& A, double& B,
                         double& C);

GeostrophicReconstruction geostrophic_reconstruct(const Grid& g, const Field& h, const Field& u,
                                                  const Field& v, const Field& zb, const Field& f,
                                                  double gravity, double dry_height);

ReconstructedPoint evaluate(const GeostrophicReconstruction& r, const Field& h, const Field& u,
                            const Field& v, const Field& zb, int i, int j, double ox, double oy);

/// Hydrostatic-reconstruction Rusanov tendency evaluated on midpoint values of the
/// reconstruction. Face pressure of the inner state carries both the Coriolis and the
/// topography source, so neither is added separately.
SweTendency wb_swe_tendency(const Grid& g, const BarotropicFields& b, const Field& zb,
                            const Field& f, double gravity, double dry_height);

}  // namespace mlsw
