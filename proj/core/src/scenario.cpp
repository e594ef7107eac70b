#include "fpsir/scenario.hpp"

#include "fpsir/errors.hpp"

namespace fpsir {

void ScenarioConfig::validate() const {
  if (label.empty()) throw InvalidArgument("scenario label must be nonempty");
  model.validate();
  grid.validate();
  cost.validate();
  sqh.validate();
  if (!(init.variance[0] > 0.0) || !(init.variance[1] > 0.0))
    throw InvalidArgument("init.variance must be positive");
}

Field2D ScenarioConfig::initial_density() const {
  return make_initial_density(init.center, init.variance[0], init.variance[1], grid);
}

SqhProblem ScenarioConfig::problem() const {
  return {model, grid, cost, sqh, initial_density(), ControlTrajectory(grid.nt), {}};
}

std::vector<std::string> preset_names() {
  return {"uncontrolled", "scenario1", "scenario2", "scenario3"};
}

ScenarioConfig preset(std::string_view name) {
  ScenarioConfig cfg;
  cfg.label = std::string(name);
  if (name == "uncontrolled") {
    cfg.controlled = false;
  } else if (name == "scenario1") {
    cfg.cost.running = running::LinearInI{1.5};
  } else if (name == "scenario2") {
    cfg.cost.running = running::IndicatorIAbove{0.15};
  } else if (name == "scenario3") {
    cfg.cost.terminal = terminal::NegSusceptibleSurplus{0.3};
    cfg.model.vaccination_max = 0.0;
  } else {
    throw ConfigError(0, "unknown preset: " + std::string(name));
  }
  return cfg;
}

ScenarioConfig resolve_scenario(std::string_view preset_or_path) {
  for (const auto& n : preset_names())
    if (n == preset_or_path) return preset(n);
  const std::filesystem::path path(preset_or_path);
  if (std::filesystem::exists(path)) return load_config(path);
  throw ConfigError(0, "unknown preset: " + std::string(preset_or_path));
}

}  // namespace fpsir
