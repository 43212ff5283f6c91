#include <mlsw/config.hpp>

#include <charconv>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace mlsw {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string real_text(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace

bool parse_bool(const std::string& value) {
    if (value == "on" || value == "true" || value == "1" || value == "yes") return true;
    if (value == "off" || value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("expected on/off, got '" + value + "'");
}

double parse_real(const std::string& value) {
    if (value == "inf") return std::numeric_limits<double>::infinity();
    double v = 0.0;
    const char* first = value.data();
    const char* last = first + value.size();
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || p != last || value.empty())
        throw ConfigError("expected a number, got '" + value + "'");
    return v;
}

int parse_int(const std::string& value) {
    int v = 0;
    const char* first = value.data();
    const char* last = first + value.size();
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || p != last || value.empty())
        throw ConfigError("expected an integer, got '" + value + "'");
    return v;
}

std::string to_string(SchemeKind k) { return k == SchemeKind::split ? "split" : "unsplit"; }
std::string to_string(MassFlux f) { return f == MassFlux::rusanov ? "rusanov" : "upwind"; }
std::string to_string(Correction c) {
    return c == Correction::explicit_update ? "explicit" : "implicit";
}

void set_scheme_field(SchemeConfig& c, const std::string& key, const std::string& value) {
    if (key == "kind") {
        if (value == "split") c.kind = SchemeKind::split;
        else if (value == "unsplit") c.kind = SchemeKind::unsplit;
        else throw ConfigError("scheme.kind must be split or unsplit");
    } else if (key == "flux") {
        if (value == "rusanov") c.flux = MassFlux::rusanov;
        else if (value == "upwind") c.flux = MassFlux::height_upwind;
        else throw ConfigError("scheme.flux must be rusanov or upwind");
    } else if (key == "exchange" || key == "correction") {
        if (value == "explicit") c.correction = Correction::explicit_update;
        else if (value == "implicit") c.correction = Correction::implicit_update;
        else throw ConfigError("scheme.exchange must be explicit or implicit");
    } else if (key == "subcycling") {
        c.subcycling = parse_bool(value);
    } else if (key == "wb_geostrophic") {
        c.wb_geostrophic = parse_bool(value);
    } else if (key == "cfl_baroclinic") {
        c.cfl_baroclinic = parse_real(value);
    } else if (key == "cfl_barotropic") {
        c.cfl_barotropic = parse_real(value);
    } else if (key == "gravity") {
        c.gravity = parse_real(value);
    } else if (key == "dry_height") {
        c.dry_height = parse_real(value);
    } else if (key == "dt_max") {
        c.dt_max = parse_real(value);
    } else if (key == "max_subcycles") {
        c.max_subcycles = parse_real(value);
    } else if (key == "max_halvings") {
        c.max_halvings = parse_int(value);
    } else {
        throw ConfigError("unknown key 'scheme." + key + "'");
    }
    if (!(c.cfl_baroclinic > 0.0 && c.cfl_baroclinic <= 1.0) ||
        !(c.cfl_barotropic > 0.0 && c.cfl_barotropic <= 1.0))
        throw ConfigError("CFL numbers must lie in (0, 1]");
    if (!(c.gravity > 0.0)) throw ConfigError("scheme.gravity must be positive");
    if (!(c.dt_max > 0.0)) throw ConfigError("scheme.dt_max must be positive");
    if (!(c.max_subcycles >= 1.0)) throw ConfigError("scheme.max_subcycles must be at least 1");
    if (c.max_halvings < 0) throw ConfigError("scheme.max_halvings must be non-negative");
}

void set_physics_field(PhysicsConfig& c, const std::string& key, const std::string& value) {
    auto real = [&](double& f) { f = parse_real(value); };
    if (key == "vertical") c.vertical = parse_bool(value);
    else if (key == "nu") real(c.nu);
    else if (key == "friction") real(c.friction);
    else if (key == "wind_coefficient") real(c.wind_coefficient);
    else if (key == "wind_u") real(c.wind_u);
    else if (key == "wind_v") real(c.wind_v);
    else if (key == "stress_amplitude") real(c.stress_amplitude);
    else if (key == "stress_length") real(c.stress_length);
    else if (key == "water_density") real(c.water_density);
    else if (key == "horizontal") c.horizontal = parse_bool(value);
    else if (key == "nu_hor") real(c.nu_hor);
    else if (key == "coriolis") c.coriolis = parse_bool(value);
    else if (key == "f0") real(c.f0);
    else if (key == "beta0") real(c.beta0);
    else throw ConfigError("unknown key 'physics." + key + "'");
    if (c.nu < 0.0 || c.friction < 0.0 || c.wind_coefficient < 0.0 || c.nu_hor < 0.0)
        throw ConfigError("viscosity and friction coefficients must be non-negative");
    if (!(c.water_density > 0.0)) throw ConfigError("physics.water_density must be positive");
}

void apply_override(ScenarioSpec& s, const std::string& key, const std::string& value) {
    const auto dot = key.find('.');
    if (dot == std::string::npos) throw ConfigError("key '" + key + "' lacks a section prefix");
    const std::string section = key.substr(0, dot);
    const std::string name = key.substr(dot + 1);
    if (name.empty()) throw ConfigError("empty key in section '" + section + "'");
    if (section == "scenario") {
        if (name == "name") s.name = value;
        else if (name == "nx") s.nx = parse_int(value);
        else if (name == "ny") s.ny = parse_int(value);
        else if (name == "layers") s.layers = parse_int(value);
        else if (name == "x_min") s.x_min = parse_real(value);
        else if (name == "x_max") s.x_max = parse_real(value);
        else if (name == "y_min") s.y_min = parse_real(value);
        else if (name == "y_max") s.y_max = parse_real(value);
        else if (name == "t_final") s.t_final = parse_real(value);
        else s.params[name] = parse_real(value);
        if ((s.nx != 0 && s.nx < 3) || (s.ny != 0 && s.ny < 3))
            throw ConfigError("resolution must be at least 3 cells per axis");
        if (s.layers < 0) throw ConfigError("scenario.layers must be at least 1");
        if (s.t_final && *s.t_final < 0.0) throw ConfigError("scenario.t_final must be non-negative");
    } else if (section == "scheme") {
        SchemeConfig probe;
        set_scheme_field(probe, name, value);
        s.scheme[name] = value;
    } else if (section == "physics") {
        PhysicsConfig probe;
        set_physics_field(probe, name, value);
        s.physics[name] = value;
    } else if (section == "output") {
        if (name == "interval") s.output_interval = parse_real(value);
        else if (name == "dir") s.output_dir = value;
        else if (name == "heatmap") s.heatmap = value;
        else if (name == "monitor") s.monitor = parse_bool(value);
        else throw ConfigError("unknown key 'output." + name + "'");
    } else {
        throw ConfigError("unknown section '" + section + "'");
    }
}

ScenarioSpec parse_config(const std::string& text) {
    ScenarioSpec s;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(number) + ": expected key = value");
        try {
            apply_override(s, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(number) + ": " + e.what());
        }
    }
    if (s.name.empty()) throw ConfigError("missing scenario.name");
    return s;
}

ScenarioSpec load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return parse_config(os.str());
}

std::string print_config(const ScenarioSpec& s) {
    std::ostringstream os;
    os << "scenario.name = " << s.name << '\n';
    if (s.nx) os << "scenario.nx = " << s.nx << '\n';
    if (s.ny) os << "scenario.ny = " << s.ny << '\n';
    if (s.layers) os << "scenario.layers = " << s.layers << '\n';
    auto opt = [&](const char* key, const std::optional<double>& v) {
        if (v) os << "scenario." << key << " = " << real_text(*v) << '\n';
    };
    opt("x_min", s.x_min);
    opt("x_max", s.x_max);
    opt("y_min", s.y_min);
    opt("y_max", s.y_max);
    opt("t_final", s.t_final);
    for (const auto& [k, v] : s.params) os << "scenario." << k << " = " << real_text(v) << '\n';
    for (const auto& [k, v] : s.scheme) os << "scheme." << k << " = " << v << '\n';
    for (const auto& [k, v] : s.physics) os << "physics." << k << " = " << v << '\n';
    if (s.output_interval != 0.0) os << "output.interval = " << real_text(s.output_interval) << '\n';
    if (!s.output_dir.empty()) os << "output.dir = " << s.output_dir << '\n';
    if (!s.heatmap.empty()) os << "output.heatmap = " << s.heatmap << '\n';
    if (s.monitor) os << "output.monitor = on\n";
    return os.str();
}

}  // namespace mlsw
