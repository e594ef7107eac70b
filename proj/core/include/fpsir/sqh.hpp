#pragma once

#include <string_view>
#include <vector>

#include "fpsir/adjoint_solver.hpp"
#include "fpsir/cost.hpp"
#include "fpsir/fp_solver.hpp"
#include "fpsir/grid.hpp"

namespace fpsir {

struct SqhParams {
  double eps0 = 1.0;
  /// Sufficient-decrease constant.
  double mu = 1e-9;
  /// Shrink factor applied to eps after an accepted step.
  double zeta = 0.9;
  /// Growth factor applied to eps after a rejected step.
  double lambda = 1.1;
  /// Stop once tau falls below this value.
  double kappa = 1e-3;
  int k_max = 150;
  /// Consecutive rejections tolerated before giving up.
  int inner_max = 200;

  void validate() const;
  bool operator==(const SqhParams&) const = default;
};

enum class SqhStatus { ConvergedTau, MaxIter, StalledEps };
std::string_view to_string(SqhStatus s);

struct SqhTraceEntry {
  /// Number of accepted updates before this trial.
  int iter = 0;
  /// Objective at the trial control.
  double J = 0.0;
  /// Objective at the current accepted control.
  double J_prev = 0.0;
  double tau = 0.0;
  /// eps used to compute the trial.
  double eps = 0.0;
  bool accepted = false;
  /// Consecutive rejections preceding this trial.
  int retries = 0;
};

struct SqhTrace {
  double J0 = 0.0;
  std::vector<SqhTraceEntry> entries;
  SqhStatus status = SqhStatus::MaxIter;

  int accepted_count() const;
};

struct SqhResult {
  ControlTrajectory control;
  DensityField density;
  SqhTrace trace;
};

/// Squared (L^2[0,T])^3 distance between two schedules (trapezoidal in time).
double tau_norm(const ControlTrajectory& a, const ControlTrajectory& b,
                const GridSpec& grid);

/// Pointwise minimisation of the augmented Hamiltonian at every control-grid
/// time.
ControlTrajectory sqh_update(const DensityField& f, const AdjointField& q,
                             const ControlTrajectory& prev, double eps,
                             const CostSpec& cost, const ModelParams& p,
                             const GridSpec& grid);

struct SqhProblem {
  ModelParams model;
  GridSpec grid;
  CostSpec cost;
  SqhParams sqh;
  Field2D initial;
  ControlTrajectory initial_control;
  FpSolveOptions solver;
};

SqhResult run_sqh(const SqhProblem& problem);

}  // namespace fpsir
