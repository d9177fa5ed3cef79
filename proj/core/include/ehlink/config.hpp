#pragma once

#include "ehlink/engine.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ehlink {

/// Flat view of an INI-style config file: "[section]" headers plus
/// "key = value" lines become "section.key" -> "value" entries. '#' and
/// ';' start comments.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config_text(std::string_view text);
ConfigMap parse_config_file(const std::string& path);

struct LoadedConfig {
    SimConfig sim;
    std::uint32_t trials = 1;
    std::optional<SweepAxis> sweep_axis;
    std::vector<double> sweep_values;
};

/// Every violation in the map: unknown keys, type errors (e.g. a
/// non-integer dilation factor) and the simulation invariants, each
/// naming the offending key. Empty means loadable.
std::vector<std::string> validate_config_map(const ConfigMap& map);

/// Builds the run configuration, applying defaults for missing keys.
/// Throws ConfigError listing all violations if the map is not valid.
LoadedConfig load_config(const ConfigMap& map);

} // namespace ehlink
