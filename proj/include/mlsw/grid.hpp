#pragma once
/// @file grid.hpp
/// @brief Uniform Cartesian grids and ghost-padded cell fields.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace mlsw {

enum class Boundary { periodic, wall, outflow };

std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& s);

/// Uniform grid in 1D or 2D. A 1D grid has ny == 1 and no ghost rows in y.
struct Grid {
    int dim = 1;
    int nx = 0;
    int ny = 1;
    double dx = 1.0;
    double dy = 1.0;
    double x0 = 0.0;
    double y0 = 0.0;
    Boundary west = Boundary::outflow;
    Boundary east = Boundary::outflow;
    Boundary south = Boundary::outflow;
    Boundary north = Boundary::outflow;

    static Grid line(int nx, double x_min, double x_max, Boundary left, Boundary right);
    static Grid rect(int nx, int ny, double x_min, double x_max, double y_min, double y_max,
                     Boundary x_bc, Boundary y_bc);

    [[nodiscard]] double xc(int i) const { return x0 + (i + 0.5) * dx; }
    [[nodiscard]] double yc(int j) const { return dim == 2 ? y0 + (j + 0.5) * dy : 0.0; }
    [[nodiscard]] int ghost_y() const { return dim == 2 ? 1 : 0; }
    [[nodiscard]] std::size_t cells() const { return static_cast<std::size_t>(nx) * ny; }
    /// Area of a cell (length in 1D).
    [[nodiscard]] double cell_measure() const { return dim == 2 ? dx * dy : dx; }
    [[nodiscard]] double x_max() const { return x0 + nx * dx; }
    [[nodiscard]] double y_max() const { return y0 + ny * dy; }
};

/// Cell-centred scalar field with one ghost ring (x only in 1D).
/// Index (i, j) with i in [-1, nx], j in [-1, ny] (j == 0 in 1D).
/// Face fields reuse the layout: entry (i, j) is the face i+1/2 (or j+1/2).
class Field {
public:
    Field() = default;
    explicit Field(const Grid& g, double value = 0.0);

    double& operator()(int i, int j = 0) { return data_[index(i, j)]; }
    double operator()(int i, int j = 0) const { return data_[index(i, j)]; }

    [[nodiscard]] std::span<double> raw() { return data_; }
    [[nodiscard]] std::span<const double> raw() const { return data_; }
    [[nodiscard]] bool empty() const { return data_.empty(); }
    [[nodiscard]] int nx() const { return nx_; }
    [[nodiscard]] int ny() const { return ny_; }

    void fill(double value);

    friend bool operator==(const Field&, const Field&) = default;

private:
    [[nodiscard]] std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(j + gy_) * stride_ + static_cast<std::size_t>(i + 1);
    }

    int nx_ = 0;
    int ny_ = 0;
    int gy_ = 0;
    std::size_t stride_ = 0;
    std::vector<double> data_;
};

/// Visit every interior cell in row-major order.
template <class F>
void for_each_cell(const Grid& g, F&& f) {
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) f(i, j);
}

double interior_max(const Grid& g, const Field& f);
double interior_min(const Grid& g, const Field& f);
/// Sum over interior cells times the cell measure.
double integrate(const Grid& g, const Field& f);

}  // namespace mlsw
