#pragma once
/// @file config.hpp
/// @brief Flat key=value scenario configuration with section prefixes.
///
/// Lines are `section.key = value`; `#` starts a comment. Sections: `scenario.` (name,
/// resolution, layers, extents, t_final and scenario parameters), `scheme.`, `physics.`
/// and `output.`. Unknown keys are rejected with the offending line number.

#include <mlsw/settings.hpp>

#include <map>
#include <optional>
#include <string>

namespace mlsw {

struct ScenarioSpec {
    std::string name;
    int nx = 0;      ///< 0: scenario default
    int ny = 0;
    int layers = 0;
    std::optional<double> x_min, x_max, y_min, y_max;
    std::optional<double> t_final;
    std::map<std::string, double> params;           ///< scenario-specific reals
    std::map<std::string, std::string> scheme;      ///< overrides of SchemeConfig fields
    std::map<std::string, std::string> physics;     ///< overrides of PhysicsConfig fields
    double output_interval = 0.0;
    std::string output_dir;
    std::string heatmap;  ///< field name rendered as PPM with each snapshot (2D only)
    bool monitor = false;

    friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

/// Parse configuration text. Throws ConfigError("line N: ...") on malformed input and
/// ConfigError("missing scenario.name") when no name is given.
ScenarioSpec parse_config(const std::string& text);
ScenarioSpec load_config(const std::string& path);
/// Canonical text form; parse_config(print_config(s)) == s.
std::string print_config(const ScenarioSpec& s);

/// Apply one `key=value` override (key with its section prefix) to a parsed spec.
void apply_override(ScenarioSpec& s, const std::string& key, const std::string& value);

/// Set a SchemeConfig / PhysicsConfig field from text. Throw ConfigError on unknown keys
/// or malformed values.
void set_scheme_field(SchemeConfig& c, const std::string& key, const std::string& value);
void set_physics_field(PhysicsConfig& c, const std::string& key, const std::string& value);

bool parse_bool(const std::string& value);
double parse_real(const std::string& value);
int parse_int(const std::string& value);

std::string to_string(SchemeKind k);
std::string to_string(MassFlux f);
std::string to_string(Correction c);

}  // namespace mlsw
