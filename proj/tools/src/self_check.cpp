#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fpsir/cli.hpp"
#include "fpsir/csv.hpp"
#include "fpsir/hamiltonian.hpp"
#include "fpsir/mc_oracle.hpp"
#include "fpsir/scenario.hpp"

namespace fpsir::cli {
namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

Outcome check_mass_positivity() {
  double worst_mass = 0.0, worst_min = 0.0;
  for (const auto& name : preset_names()) {
    const auto cfg = preset(name);
    const auto f = solve_forward(cfg.initial_density(), ControlTrajectory(cfg.grid.nt),
                                 cfg.model, cfg.grid);
    for (const auto& slice : f.slices) {
      worst_mass = std::max(worst_mass, std::abs(quadrature(slice, cfg.grid) - 1.0));
      const auto v = slice.values();
      worst_min = std::min(worst_min, *std::min_element(v.begin(), v.end()));
    }
  }
  return {worst_mass <= 1e-8 && worst_min >= 0.0,
          "mass_dev=" + csv::number(worst_mass) + " min=" + csv::number(worst_min)};
}

Outcome check_chang_cooper_limits() {
  const double centred = chang_cooper_weights(0.0, 1.0, 0.1);
  const double up = chang_cooper_weights(1e3, 1e-6, 0.1);
  const double down = chang_cooper_weights(-1e3, 1e-6, 0.1);
  const bool ok = std::abs(centred - 0.5) < 1e-12 && std::abs(up) < 1e-6 &&
                  std::abs(down - 1.0) < 1e-6;
  return {ok, "delta(0)=" + csv::number(centred)};
}

Outcome check_adjoint_constant() {
  auto cfg = preset("scenario1");
  const int n = cfg.grid.nx;
  Field2D zero(n), k(n);
  for (auto& v : k.values()) v = 0.7;
  ControlTrajectory u(cfg.grid.nt, {0.4, 0.05, 0.1});
  const auto q = solve_adjoint(u, zero, k, cfg.model, cfg.grid);
  double dev = 0.0;
  for (const auto& slice : q.slices)
    for (double v : slice.values()) dev = std::max(dev, std::abs(v + 0.7));
  return {dev <= 1e-12, "max_dev=" + csv::number(dev)};
}

Outcome check_hamiltonian_minimiser() {
  const ModelParams p;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  int bad = 0;
  for (int trial = 0; trial < 20; ++trial) {
    HamiltonianCoeffs h;
    for (int c = 0; c < 3; ++c) {
      h.lin[c] = uni(rng);
      h.quad[c] = uni(rng);
    }
    ControlPoint prev;
    for (int c = 0; c < 3; ++c) prev[c] = 0.5 * (uni(rng) + 1.0) * control_upper(p, c);
    const double eps = 0.5 * (uni(rng) + 1.5);
    const auto w = minimize_H_eps(h, prev, eps, p);
    const double best = eval_H_eps(h, w, prev, eps);
    constexpr int m = 40;
    for (int a = 0; a <= m; ++a)
      for (int b = 0; b <= m; ++b)
        for (int c = 0; c <= m; ++c) {
          const ControlPoint g{a * control_upper(p, 0) / m, b * control_upper(p, 1) / m,
                               c * control_upper(p, 2) / m};
          if (eval_H_eps(h, g, prev, eps) < best - 1e-12) {
            ++bad;
            a = b = c = m + 1;
          }
        }
  }
  return {bad == 0, "grid_beats_closed_form=" + std::to_string(bad)};
}

Outcome check_config_roundtrip() {
  int bad = 0;
  for (const auto& name : preset_names()) {
    const auto cfg = preset(name);
    if (!(parse_config(serialize_config(cfg)) == cfg)) ++bad;
  }
  return {bad == 0, "mismatches=" + std::to_string(bad)};
}

Outcome check_population_conserved() {
  const auto cfg = preset("uncontrolled");
  const auto states = rk4_sir3(0.99, 0.01, 0.0, ControlTrajectory(cfg.grid.nt, {0.3, 0.05, 0.1}),
                               cfg.model, cfg.grid);
  double dev = 0.0;
  for (const auto& s : states) dev = std::max(dev, std::abs(s.s + s.i + s.r - 1.0));
  return {dev <= 1e-12, "max_dev=" + csv::number(dev)};
}

}  // namespace

int run_self_checks(std::ostream& out) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> checks{
      {"mass_positivity", check_mass_positivity},
      {"chang_cooper_limits", check_chang_cooper_limits},
      {"adjoint_constant_terminal", check_adjoint_constant},
      {"hamiltonian_minimiser", check_hamiltonian_minimiser},
      {"config_roundtrip", check_config_roundtrip},
      {"population_conserved", check_population_conserved},
  };
  int failures = 0;
  for (const auto& [name, fn] : checks) {
    const auto r = fn();
    if (!r.ok) ++failures;
    out << (r.ok ? "ok   " : "FAIL ") << name << ' ' << r.detail << '\n';
  }
  return failures;
}

}  // namespace fpsir::cli
