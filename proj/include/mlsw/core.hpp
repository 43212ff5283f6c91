#pragma once
/// @file core.hpp
/// @brief Layer configuration, simulation state, derived quantities and boundary filling.

#include <mlsw/grid.hpp>

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlsw {

/// Invalid user input (configuration, arguments, files).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A supplied time step exceeds the stability bound of an operator.
struct CflViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fixed positive layer fractions l_α with Σ l_α = 1.
class LayerConfig {
public:
    LayerConfig() = default;
    explicit LayerConfig(std::vector<double> weights);
    static LayerConfig uniform(int n);

    [[nodiscard]] int size() const { return static_cast<int>(w_.size()); }
    [[nodiscard]] double operator[](int a) const { return w_[static_cast<std::size_t>(a)]; }
    [[nodiscard]] std::span<const double> weights() const { return w_; }
    /// Height of the bottom interface of layer a as a fraction of h.
    [[nodiscard]] double lower_fraction(int a) const;

    friend bool operator==(const LayerConfig&, const LayerConfig&) = default;

private:
    std::vector<double> w_;
};

/// Cell-centred state. v is empty in 1D; layer heights are l_α h.
struct SimState {
    Field h;
    Field zb;
    std::vector<Field> u;
    std::vector<Field> v;
    std::vector<Field> T;
    double t = 0.0;

    [[nodiscard]] int layers() const { return static_cast<int>(u.size()); }
    [[nodiscard]] bool has_v() const { return !v.empty(); }
};

/// Zero state with `layers` layers (v allocated for 2D grids).
SimState make_state(const Grid& g, int layers);

/// ū = Σ l_α u_α, evaluated on the whole padded array.
Field mean_velocity(std::span<const Field> u, const LayerConfig& layers);
/// σ_α = u_α − ū.
std::vector<Field> deviations(std::span<const Field> u, const Field& mean);
/// E = g h²/2 + g h z_b + Σ l_α h (u_α² + v_α²)/2 on interior cells.
Field total_energy(const Grid& g, const SimState& s, const LayerConfig& layers, double gravity);
double total_energy_integral(const Grid& g, const SimState& s, const LayerConfig& layers,
                             double gravity);

/// Parity of a field under reflection at a wall.
enum class Parity { even, odd_x, odd_y };

/// Fill the ghost ring of one field.
void fill_ghosts(const Grid& g, Field& f, Parity p);
/// Fill ghosts of all state fields (u odd at x-walls, v odd at y-walls).
void apply_boundary(const Grid& g, SimState& s);

/// Zero velocities of cells with h below the dry threshold.
void zero_dry_velocities(const Grid& g, SimState& s, double h_dry);

/// Thomas sweep: sub-diagonal a (a[0] unused), diagonal b, super-diagonal c
/// (c[n-1] unused); rhs d is overwritten with the solution.
void solve_tridiagonal(std::span<const double> a, std::span<const double> b,
                       std::span<const double> c, std::span<double> d);

/// Largest |Σ_α l_α (u_α − ū)| over interior cells.
double deviation_sum_residual(const Grid& g, const SimState& s, const LayerConfig& layers);

}  // namespace mlsw
