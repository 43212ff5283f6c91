#include <mlsw/grid.hpp>

#include <mlsw/core.hpp>

#include <algorithm>
#include <limits>

namespace mlsw {

std::string to_string(Boundary b) {
    switch (b) {
        case Boundary::periodic: return "periodic";
        case Boundary::wall: return "wall";
        case Boundary::outflow: return "outflow";
    }
    return "outflow";
}

Boundary boundary_from_string(const std::string& s) {
    if (s == "periodic") return Boundary::periodic;
    if (s == "wall") return Boundary::wall;
    if (s == "outflow") return Boundary::outflow;
    throw ConfigError("unknown boundary kind '" + s + "'");
}

Grid Grid::line(int nx, double x_min, double x_max, Boundary left, Boundary right) {
    if (nx < 1 || !(x_max > x_min)) throw ConfigError("invalid 1D grid extents");
    Grid g;
    g.dim = 1;
    g.nx = nx;
    g.ny = 1;
    g.dx = (x_max - x_min) / nx;
    g.dy = 1.0;
    g.x0 = x_min;
    g.west = left;
    g.east = right;
    return g;
}

Grid Grid::rect(int nx, int ny, double x_min, double x_max, double y_min, double y_max,
                Boundary x_bc, Boundary y_bc) {
    if (nx < 1 || ny < 1 || !(x_max > x_min) || !(y_max > y_min))
        throw ConfigError("invalid 2D grid extents");
    Grid g;
    g.dim = 2;
    g.nx = nx;
    g.ny = ny;
    g.dx = (x_max - x_min) / nx;
    g.dy = (y_max - y_min) / ny;
    g.x0 = x_min;
    g.y0 = y_min;
    g.west = g.east = x_bc;
    g.south = g.north = y_bc;
    return g;
}

Field::Field(const Grid& g, double value)
    : nx_(g.nx), ny_(g.ny), gy_(g.ghost_y()), stride_(static_cast<std::size_t>(g.nx) + 2),
      data_(stride_ * static_cast<std::size_t>(g.ny + 2 * g.ghost_y()), value) {}

void Field::fill(double value) { std::fill(data_.begin(), data_.end(), value); }

double interior_max(const Grid& g, const Field& f) {
    double m = -std::numeric_limits<double>::infinity();
    for_each_cell(g, [&](int i, int j) { m = std::max(m, f(i, j)); });
    return m;
}

double interior_min(const Grid& g, const Field& f) {
    double m = std::numeric_limits<double>::infinity();
    for_each_cell(g, [&](int i, int j) { m = std::min(m, f(i, j)); });
    return m;
}

double integrate(const Grid& g, const Field& f) {
    double s = 0.0;
    for_each_cell(g, [&](int i, int j) { s += f(i, j); });
    return s * g.cell_measure();
}

}  // namespace mlsw
