#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fpsir/cost.hpp"
#include "fpsir/dynamics.hpp"
#include "fpsir/grid.hpp"
#include "fpsir/sqh.hpp"

namespace fpsir {

struct InitialCondition {
  StatePoint center{0.99, 0.01};
  /// Per-axis variance of the Gaussian (S, I).
  std::array<double, 2> variance{0.025, 0.025};
  bool operator==(const InitialCondition& o) const {
    return center.s == o.center.s && center.i == o.center.i &&
           variance == o.variance;
  }
};

struct ScenarioConfig {
  std::string label;
  ModelParams model;
  GridSpec grid;
  CostSpec cost;
  SqhParams sqh;
  InitialCondition init;
  /// false: forward solve with u == 0 only, no optimisation.
  bool controlled = true;

  void validate() const;
  Field2D initial_density() const;
  SqhProblem problem() const;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Names accepted by preset().
std::vector<std::string> preset_names();

/// One of "uncontrolled", "scenario1", "scenario2", "scenario3".  Throws
/// ConfigError("unknown preset ...") otherwise.
ScenarioConfig preset(std::string_view name);

/// Parses the flat `key = value` format.  A `base = <preset>` line seeds
/// every field; without it every key must be present.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Emits a complete config that parse_config reads back unchanged.
std::string serialize_config(const ScenarioConfig& cfg);

/// Preset name or path to a config file.
ScenarioConfig resolve_scenario(std::string_view preset_or_path);

}  // namespace fpsir
