#pragma once

#include <variant>

#include "fpsir/dynamics.hpp"
#include "fpsir/grid.hpp"

namespace fpsir {

namespace running {
struct Zero {
  bool operator==(const Zero&) const = default;
};
/// G(x) = coeff * I.
struct LinearInI {
  double coeff = 1.5;
  bool operator==(const LinearInI&) const = default;
};
/// G(x) = 1 when I >= threshold (closed set), else 0.
struct IndicatorIAbove {
  double threshold = 0.15;
  bool operator==(const IndicatorIAbove&) const = default;
};
}  // namespace running

namespace terminal {
struct Zero {
  bool operator==(const Zero&) const = default;
};
/// K(x) = -max(S - threshold, 0).
struct NegSusceptibleSurplus {
  double threshold = 0.3;
  bool operator==(const NegSusceptibleSurplus&) const = default;
};
}  // namespace terminal

using RunningCost =
    std::variant<running::Zero, running::LinearInI, running::IndicatorIAbove>;
using TerminalCost = std::variant<terminal::Zero, terminal::NegSusceptibleSurplus>;

struct CostSpec {
  /// L1 weight on the control.
  double beta1 = 0.2;
  /// L2 weight on the control (enters as beta2 / 2 * |u|^2).
  double beta2 = 0.1;
  RunningCost running = running::Zero{};
  TerminalCost terminal = terminal::Zero{};

  void validate() const;
  bool operator==(const CostSpec&) const = default;
};

double control_cost(const ControlPoint& u, const CostSpec& spec);
double eval_running_G(const StatePoint& x, const CostSpec& spec);
double eval_terminal_K(const StatePoint& x, const CostSpec& spec);

/// sup |G| and sup |K| over [0,1]^2.
double running_bound(const CostSpec& spec);
double terminal_bound(const CostSpec& spec);

/// G and K sampled at the mesh nodes.
Field2D sample_running(const CostSpec& spec, const GridSpec& grid);
Field2D sample_terminal(const CostSpec& spec, const GridSpec& grid);

struct CostBreakdown {
  double control = 0.0;
  double running = 0.0;
  double terminal = 0.0;
  double total() const { return control + running + terminal; }
};

CostBreakdown evaluate_J_parts(const DensityField& f, const ControlTrajectory& u,
                               const CostSpec& spec, const GridSpec& grid);

/// Objective J(f, u) with trapezoidal quadrature in space and on the
/// control-time grid.
double evaluate_J(const DensityField& f, const ControlTrajectory& u,
                  const CostSpec& spec, const GridSpec& grid);

/// Trapezoidal time integral of a sequence sampled on the control grid.
double time_trapezoid(std::span<const double> samples, double dt);

}  // namespace fpsir
