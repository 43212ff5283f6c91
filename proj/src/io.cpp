#include <mlsw/io.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mlsw {

std::size_t Snapshot::column(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw std::out_of_range("no column '" + name + "'");
    return static_cast<std::size_t>(it - columns.begin());
}

Snapshot make_snapshot(const Grid& g, const SimState& s, const LayerConfig& layers) {
    const int n = s.layers();
    const bool two_d = g.dim == 2;
    Snapshot snap;
    snap.time = s.t;
    snap.columns.emplace_back("x");
    if (two_d) snap.columns.emplace_back("y");
    snap.columns.emplace_back("zb");
    snap.columns.emplace_back("h");
    for (int a = 1; a <= n; ++a) snap.columns.push_back("u" + std::to_string(a));
    if (two_d)
        for (int a = 1; a <= n; ++a) snap.columns.push_back("v" + std::to_string(a));
    for (int a = 1; a <= n; ++a) snap.columns.push_back("T" + std::to_string(a));
    snap.columns.emplace_back("ubar");
    if (two_d) snap.columns.emplace_back("vbar");

    const Field ub = mean_velocity(s.u, layers);
    Field vb;
    if (s.has_v()) vb = mean_velocity(s.v, layers);
    for_each_cell(g, [&](int i, int j) {
        std::vector<double> r;
        r.reserve(snap.columns.size());
        r.push_back(g.xc(i));
        if (two_d) r.push_back(g.yc(j));
        r.push_back(s.zb(i, j));
        r.push_back(s.h(i, j));
        for (const auto& f : s.u) r.push_back(f(i, j));
        if (two_d)
            for (const auto& f : s.v) r.push_back(f(i, j));
        for (const auto& f : s.T) r.push_back(f(i, j));
        r.push_back(ub(i, j));
        if (two_d) r.push_back(vb(i, j));
        snap.rows.push_back(std::move(r));
    });
    return snap;
}

void write_snapshot(const Snapshot& snap, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write snapshot '" + path + "'");
    for (std::size_t c = 0; c < snap.columns.size(); ++c) f << (c ? "," : "") << snap.columns[c];
    f << '\n' << std::setprecision(17);
    for (const auto& r : snap.rows) {
        for (std::size_t c = 0; c < r.size(); ++c) {
            if (!std::isfinite(r[c]))
                throw std::runtime_error("non-finite value in column " + snap.columns[c]);
            f << (c ? "," : "") << r[c];
        }
        f << '\n';
    }
    if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read snapshot '" + path + "'");
    Snapshot snap;
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error("empty snapshot '" + path + "'");
    std::istringstream hs(line);
    for (std::string c; std::getline(hs, c, ',');) snap.columns.push_back(c);
    int number = 1;
    while (std::getline(f, line)) {
        ++number;
        if (line.empty()) continue;
        std::vector<double> r;
        const char* p = line.data();
        const char* end = p + line.size();
        while (p < end) {
            double v = 0.0;
            auto [q, ec] = std::from_chars(p, end, v);
            if (ec != std::errc())
                throw std::runtime_error(path + ":" + std::to_string(number) + ": bad number");
            r.push_back(v);
            p = q;
            if (p < end && *p == ',') ++p;
        }
        if (r.size() != snap.columns.size())
            throw std::runtime_error(path + ":" + std::to_string(number) + ": wrong column count");
        snap.rows.push_back(std::move(r));
    }
    return snap;
}

Field state_field(const Grid& g, const SimState& s, const LayerConfig& layers,
                  const std::string& name) {
    auto layer_index = [&](const std::string& rest) {
        int k = 0;
        auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), k);
        if (ec != std::errc() || p != rest.data() + rest.size() || k < 1 || k > s.layers())
            throw ConfigError("unknown field '" + name + "'");
        return static_cast<std::size_t>(k - 1);
    };
    if (name == "h") return s.h;
    if (name == "zb") return s.zb;
    Field f(g);
    if (name == "eta") {
        for_each_cell(g, [&](int i, int j) { f(i, j) = s.h(i, j) + s.zb(i, j); });
        return f;
    }
    if (name == "ubar") return mean_velocity(s.u, layers);
    if (name == "vbar" && s.has_v()) return mean_velocity(s.v, layers);
    if (name == "speed") {
        const Field ub = mean_velocity(s.u, layers);
        const Field vb = s.has_v() ? mean_velocity(s.v, layers) : Field(g);
        for_each_cell(g, [&](int i, int j) { f(i, j) = std::hypot(ub(i, j), vb(i, j)); });
        return f;
    }
    if (name.size() > 1 && name[0] == 'u') return s.u[layer_index(name.substr(1))];
    if (name.size() > 1 && name[0] == 'v' && s.has_v()) return s.v[layer_index(name.substr(1))];
    if (name.size() > 1 && name[0] == 'T') return s.T[layer_index(name.substr(1))];
    throw ConfigError("unknown field '" + name + "'");
}

void write_heatmap(const Grid& g, const Field& f, const std::string& path) {
    const double lo = interior_min(g, f);
    const double hi = interior_max(g, f);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write heatmap '" + path + "'");
    out << "P6\n" << g.nx << ' ' << g.ny << "\n255\n";
    auto channel = [](double v) {
        return static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * std::clamp(v, 0.0, 1.0))));
    };
    for (int j = g.ny - 1; j >= 0; --j)
        for (int i = 0; i < g.nx; ++i) {
            const double t = hi > lo ? (f(i, j) - lo) / (hi - lo) : 0.5;
            // blue (0) → white (0.5) → red (1)
            const double r = t < 0.5 ? 2.0 * t : 1.0;
            const double b = t < 0.5 ? 1.0 : 2.0 * (1.0 - t);
            const double gr = t < 0.5 ? 2.0 * t : 2.0 * (1.0 - t);
            out << channel(r) << channel(gr) << channel(b);
        }
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
    std::ofstream side(path + ".txt");
    if (!side) throw std::runtime_error("cannot write '" + path + ".txt'");
    side << std::setprecision(17) << "min " << lo << "\nmax " << hi << '\n';
}

}  // namespace mlsw
