#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "dirsim/scenario.hpp"
#include "dirsim/sweep.hpp"

namespace dirsim {

// Snake_case JSON. Positions are {"x", "y", "z"}; aj_power_dbm may be null.
std::string scenario_to_json(const ScenarioConfig& cfg, int indent = 2);
std::string experiment_to_json(const Experiment& exp, int indent = 2);

/// Overlays a JSON document on `base`: keys present replace base values,
/// missing keys keep them, unknown keys throw ConfigError. A top-level
/// "sweep" object overlays the sweep spec the same way.
Experiment overlay_experiment(const Experiment& base, std::string_view json_text);
Experiment load_experiment(const Experiment& base, const std::filesystem::path& path);

}  // namespace dirsim
