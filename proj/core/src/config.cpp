#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "fpsir/csv.hpp"
#include "fpsir/errors.hpp"
#include "fpsir/scenario.hpp"

namespace fpsir {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view v, int line, std::string_view key) {
  v = trim(v);
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
    throw ConfigError(line, "invalid number for " + std::string(key) + ": '" +
                                std::string(v) + "'");
  return out;
}

int to_int(std::string_view v, int line, std::string_view key) {
  v = trim(v);
  int out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
    throw ConfigError(line, "invalid integer for " + std::string(key) + ": '" +
                                std::string(v) + "'");
  return out;
}

bool to_bool(std::string_view v, int line, std::string_view key) {
  v = trim(v);
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError(line, "invalid boolean for " + std::string(key) + ": '" +
                              std::string(v) + "'");
}

std::array<double, 2> to_pair(std::string_view v, int line, std::string_view key,
                              bool allow_scalar) {
  const auto comma = v.find(',');
  if (comma == std::string_view::npos) {
    if (!allow_scalar)
      throw ConfigError(line, std::string(key) + " expects two comma-separated values");
    const double x = to_double(v, line, key);
    return {x, x};
  }
  return {to_double(v.substr(0, comma), line, key),
          to_double(v.substr(comma + 1), line, key)};
}

// `name` or `name:parameter`.
std::pair<std::string_view, std::string_view> split_tagged(std::string_view v) {
  v = trim(v);
  const auto colon = v.find(':');
  if (colon == std::string_view::npos) return {v, {}};
  return {trim(v.substr(0, colon)), trim(v.substr(colon + 1))};
}

RunningCost to_running(std::string_view v, int line) {
  const auto [tag, arg] = split_tagged(v);
  if (tag == "zero" && arg.empty()) return running::Zero{};
  if (tag == "linear_in_i") return running::LinearInI{to_double(arg, line, "cost.running")};
  if (tag == "indicator") return running::IndicatorIAbove{to_double(arg, line, "cost.running")};
  throw ConfigError(line, "invalid cost.running '" + std::string(v) + "'");
}

TerminalCost to_terminal(std::string_view v, int line) {
  const auto [tag, arg] = split_tagged(v);
  if (tag == "zero" && arg.empty()) return terminal::Zero{};
  if (tag == "neg_susceptible_surplus")
    return terminal::NegSusceptibleSurplus{to_double(arg, line, "cost.terminal")};
  throw ConfigError(line, "invalid cost.terminal '" + std::string(v) + "'");
}

std::string running_text(const RunningCost& g) {
  if (const auto* lin = std::get_if<running::LinearInI>(&g))
    return "linear_in_i:" + csv::exact_number(lin->coeff);
  if (const auto* ind = std::get_if<running::IndicatorIAbove>(&g))
    return "indicator:" + csv::exact_number(ind->threshold);
  return "zero";
}

std::string terminal_text(const TerminalCost& k) {
  if (const auto* s = std::get_if<terminal::NegSusceptibleSurplus>(&k))
    return "neg_susceptible_surplus:" + csv::exact_number(s->threshold);
  return "zero";
}

struct Key {
  std::function<void(ScenarioConfig&, std::string_view, int)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

template <class Get>
Key real_key(std::string name, Get field) {
  return {[field, name](ScenarioConfig& c, std::string_view v, int line) {
            field(c) = to_double(v, line, name);
          },
          [field](const ScenarioConfig& c) {
            return csv::exact_number(field(const_cast<ScenarioConfig&>(c)));
          }};
}

template <class Get>
Key int_key(std::string name, Get field) {
  return {[field, name](ScenarioConfig& c, std::string_view v, int line) {
            field(c) = to_int(v, line, name);
          },
          [field](const ScenarioConfig& c) {
            return std::to_string(field(const_cast<ScenarioConfig&>(c)));
          }};
}

// Ordered so serialisation output is stable.
const std::vector<std::pair<std::string, Key>>& keys() {
  static const std::vector<std::pair<std::string, Key>> table = [] {
    std::vector<std::pair<std::string, Key>> t;
    const auto add = [&t](std::string name, Key k) { t.emplace_back(std::move(name), std::move(k)); };
    add("label", {[](ScenarioConfig& c, std::string_view v, int) { c.label = std::string(trim(v)); },
                  [](const ScenarioConfig& c) { return c.label; }});
    add("controlled", {[](ScenarioConfig& c, std::string_view v, int line) {
                         c.controlled = to_bool(v, line, "controlled");
                       },
                       [](const ScenarioConfig& c) { return std::string(c.controlled ? "true" : "false"); }});
    add("model.b", real_key("model.b", [](ScenarioConfig& c) -> double& { return c.model.birth_rate; }));
    add("model.delta", real_key("model.delta", [](ScenarioConfig& c) -> double& { return c.model.death_rate; }));
    add("model.beta", real_key("model.beta", [](ScenarioConfig& c) -> double& { return c.model.infection_rate; }));
    add("model.gamma", real_key("model.gamma", [](ScenarioConfig& c) -> double& { return c.model.recovery_rate; }));
    add("model.noise_coeff", real_key("model.noise_coeff", [](ScenarioConfig& c) -> double& { return c.model.noise_coeff; }));
    add("model.alpha_max", real_key("model.alpha_max", [](ScenarioConfig& c) -> double& { return c.model.npi_max; }));
    add("model.v_max", real_key("model.v_max", [](ScenarioConfig& c) -> double& { return c.model.vaccination_max; }));
    add("model.eta_max", real_key("model.eta_max", [](ScenarioConfig& c) -> double& { return c.model.treatment_max; }));
    add("grid.nx", int_key("grid.nx", [](ScenarioConfig& c) -> int& { return c.grid.nx; }));
    add("grid.nt", int_key("grid.nt", [](ScenarioConfig& c) -> int& { return c.grid.nt; }));
    add("grid.T", real_key("grid.T", [](ScenarioConfig& c) -> double& { return c.grid.horizon; }));
    add("grid.x_lo", real_key("grid.x_lo", [](ScenarioConfig& c) -> double& { return c.grid.lo; }));
    add("grid.x_hi", real_key("grid.x_hi", [](ScenarioConfig& c) -> double& { return c.grid.hi; }));
    add("grid.substeps", int_key("grid.substeps", [](ScenarioConfig& c) -> int& { return c.grid.substeps; }));
    add("cost.beta1", real_key("cost.beta1", [](ScenarioConfig& c) -> double& { return c.cost.beta1; }));
    add("cost.beta2", real_key("cost.beta2", [](ScenarioConfig& c) -> double& { return c.cost.beta2; }));
    add("cost.running", {[](ScenarioConfig& c, std::string_view v, int line) { c.cost.running = to_running(v, line); },
                         [](const ScenarioConfig& c) { return running_text(c.cost.running); }});
    add("cost.terminal", {[](ScenarioConfig& c, std::string_view v, int line) { c.cost.terminal = to_terminal(v, line); },
                          [](const ScenarioConfig& c) { return terminal_text(c.cost.terminal); }});
    add("sqh.eps0", real_key("sqh.eps0", [](ScenarioConfig& c) -> double& { return c.sqh.eps0; }));
    add("sqh.mu", real_key("sqh.mu", [](ScenarioConfig& c) -> double& { return c.sqh.mu; }));
    add("sqh.zeta", real_key("sqh.zeta", [](ScenarioConfig& c) -> double& { return c.sqh.zeta; }));
    add("sqh.lambda", real_key("sqh.lambda", [](ScenarioConfig& c) -> double& { return c.sqh.lambda; }));
    add("sqh.kappa", real_key("sqh.kappa", [](ScenarioConfig& c) -> double& { return c.sqh.kappa; }));
    add("sqh.k_max", int_key("sqh.k_max", [](ScenarioConfig& c) -> int& { return c.sqh.k_max; }));
    add("sqh.inner_max", int_key("sqh.inner_max", [](ScenarioConfig& c) -> int& { return c.sqh.inner_max; }));
    add("init.center", {[](ScenarioConfig& c, std::string_view v, int line) {
                          const auto p = to_pair(v, line, "init.center", false);
                          c.init.center = {p[0], p[1]};
                        },
                        [](const ScenarioConfig& c) {
                          return csv::exact_number(c.init.center.s) + "," +
                                 csv::exact_number(c.init.center.i);
                        }});
    add("init.variance", {[](ScenarioConfig& c, std::string_view v, int line) {
                            c.init.variance = to_pair(v, line, "init.variance", true);
                          },
                          [](const ScenarioConfig& c) {
                            return csv::exact_number(c.init.variance[0]) + "," +
                                   csv::exact_number(c.init.variance[1]);
                          }});
    return t;
  }();
  return table;
}

const Key* find_key(std::string_view name) {
  for (const auto& [n, k] : keys())
    if (n == name) return &k;
  return nullptr;
}

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
  struct Entry {
    std::string key;
    std::string value;
    int line;
  };
  std::vector<Entry> entries;
  std::string base;
  int base_line = 0;
  std::map<std::string, int> seen;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(line_no, "expected 'key = value', got '" + std::string(line) + "'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError(line_no, "missing key");
    if (seen.count(key)) throw ConfigError(line_no, "duplicate key '" + key + "'");
    seen[key] = line_no;
    if (key == "base") {
      base = value;
      base_line = line_no;
      continue;
    }
    if (!find_key(key)) throw ConfigError(line_no, "unknown key '" + key + "'");
    entries.push_back({key, value, line_no});
  }

  ScenarioConfig cfg;
  if (!base.empty()) {
    try {
      cfg = preset(base);
    } catch (const ConfigError& e) {
      throw ConfigError(base_line, e.what());
    }
  } else {
    for (const auto& [name, key] : keys())
      if (!seen.count(name))
        throw ConfigError(0, "missing key '" + name + "' (and no base preset)");
  }
  for (const auto& e : entries) find_key(e.key)->set(cfg, e.value, e.line);
  try {
    cfg.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(0, e.what());
  }
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ScenarioConfig& cfg) {
  std::string out;
  for (const auto& [name, key] : keys()) out += name + " = " + key.get(cfg) + "\n";
  return out;
}

}  // namespace fpsir
