#pragma once
/// @file io.hpp
/// @brief CSV snapshots and PPM heatmaps.

#include <mlsw/core.hpp>
#include <mlsw/grid.hpp>

#include <string>
#include <vector>

namespace mlsw {

/// Cell-wise table of one state: columns x[,y],zb,h,u1..uN[,v1..vN],T1..TN,ubar[,vbar].
struct Snapshot {
    double time = 0.0;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    /// Index of a named column; throws std::out_of_range when absent.
    [[nodiscard]] std::size_t column(const std::string& name) const;
    friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

Snapshot make_snapshot(const Grid& g, const SimState& s, const LayerConfig& layers);

/// CSV with one header line and 17 significant digits. Throws std::runtime_error on I/O failure
/// or non-finite values.
void write_snapshot(const Snapshot& snap, const std::string& path);
/// Reads a file written by write_snapshot (time is not stored in the file and is set to 0).
Snapshot read_snapshot(const std::string& path);

/// Named scalar field of a state: h, zb, eta, ubar, vbar, speed, u<k>, v<k>, T<k> (1-based).
Field state_field(const Grid& g, const SimState& s, const LayerConfig& layers,
                  const std::string& name);

/// Binary PPM (P6) raster, north row first, with a linear blue-white-red colormap;
/// min and max are written to `path + ".txt"`.
void write_heatmap(const Grid& g, const Field& f, const std::string& path);

}  // namespace mlsw
