#include "fpsir/sqh.hpp"

#include <vector>

#include "fpsir/errors.hpp"
#include "fpsir/hamiltonian.hpp"

namespace fpsir {

void SqhParams::validate() const {
  if (!(eps0 > 0.0)) throw InvalidArgument("sqh.eps0 must be positive");
  if (!(mu > 0.0)) throw InvalidArgument("sqh.mu must be positive");
  if (!(zeta > 0.0 && zeta < 1.0)) throw InvalidArgument("sqh.zeta must lie in (0, 1)");
  if (!(lambda > 1.0)) throw InvalidArgument("sqh.lambda must exceed 1");
  if (!(kappa > 0.0)) throw InvalidArgument("sqh.kappa must be positive");
  if (k_max < 1) throw InvalidArgument("sqh.k_max must be >= 1");
  if (inner_max < 1) throw InvalidArgument("sqh.inner_max must be >= 1");
}

std::string_view to_string(SqhStatus s) {
  switch (s) {
    case SqhStatus::ConvergedTau: return "converged_tau";
    case SqhStatus::MaxIter: return "max_iter";
    case SqhStatus::StalledEps: return "stalled_eps";
  }
  return "unknown";
}

int SqhTrace::accepted_count() const {
  int n = 0;
  for (const auto& e : entries) n += e.accepted ? 1 : 0;
  return n;
}

double tau_norm(const ControlTrajectory& a, const ControlTrajectory& b,
                const GridSpec& grid) {
  if (a.size() != grid.nt || b.size() != grid.nt)
    throw DimensionMismatch("control trajectories do not match the time grid");
  double tau = 0.0;
  std::vector<double> sq(static_cast<std::size_t>(grid.nt));
  for (int c = 0; c < 3; ++c) {
    for (int k = 0; k < grid.nt; ++k) {
      const double d = a[k][c] - b[k][c];
      sq[k] = d * d;
    }
    tau += time_trapezoid(sq, grid.control_dt());
  }
  return tau;
}

ControlTrajectory sqh_update(const DensityField& f, const AdjointField& q,
                             const ControlTrajectory& prev, double eps,
                             const CostSpec& cost, const ModelParams& p,
                             const GridSpec& grid) {
  if (static_cast<int>(f.slices.size()) != grid.nt ||
      static_cast<int>(q.slices.size()) != grid.nt || prev.size() != grid.nt)
    throw DimensionMismatch("SQH update inputs do not match the time grid");
  ControlTrajectory next(grid.nt);
  for (int k = 0; k < grid.nt; ++k) {
    const auto h = extract_coeffs(f.at(k), q.at(k), cost, p, grid);
    next[k] = minimize_H_eps(h, prev[k], eps, p);
  }
  return next;
}

SqhResult run_sqh(const SqhProblem& problem) {
  const auto& [model, grid, cost, params, initial, initial_control, solver] = problem;
  model.validate();
  grid.validate();
  cost.validate();
  params.validate();
  if (initial_control.size() != grid.nt)
    throw DimensionMismatch("initial control does not match the time grid");
  if (!initial_control.admissible(model))
    throw InvalidArgument("initial control is not admissible");

  SqhResult result;
  result.control = initial_control;
  result.density = solve_forward(initial, result.control, model, grid, solver);
  double J = evaluate_J(result.density, result.control, cost, grid);
  result.trace.J0 = J;

  double eps = params.eps0;
  int accepted = 0;
  int retries = 0;
  while (true) {
    const AdjointField q = solve_adjoint(result.control, cost, model, grid, solver);
    bool advanced = false;
    while (!advanced) {
      ControlTrajectory trial =
          sqh_update(result.density, q, result.control, eps, cost, model, grid);
      DensityField f_trial = solve_forward(initial, trial, model, grid, solver);
      const double J_trial = evaluate_J(f_trial, trial, cost, grid);
      const double tau = tau_norm(trial, result.control, grid);

      SqhTraceEntry entry{accepted, J_trial, J, tau, eps, false, retries};
      if (J_trial - J > -params.mu * tau) {
        result.trace.entries.push_back(entry);
        eps *= params.lambda;
        ++retries;
        if (tau < params.kappa) {
          result.trace.status = SqhStatus::ConvergedTau;
          return result;
        }
        if (retries >= params.inner_max) {
          result.trace.status = SqhStatus::StalledEps;
          return result;
        }
        continue;
      }
      entry.accepted = true;
      result.trace.entries.push_back(entry);
      eps *= params.zeta;
      retries = 0;
      ++accepted;
      result.control = std::move(trial);
      result.density = std::move(f_trial);
      J = J_trial;
      if (tau < params.kappa) {
        result.trace.status = SqhStatus::ConvergedTau;
        return result;
      }
      if (accepted >= params.k_max) {
        result.trace.status = SqhStatus::MaxIter;
        return result;
      }
      advanced = true;
    }
  }
}

}  // namespace fpsir
