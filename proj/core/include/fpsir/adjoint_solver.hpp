#pragma once

#include "fpsir/cost.hpp"
#include "fpsir/fp_solver.hpp"
#include "fpsir/grid.hpp"

namespace fpsir {

/// Upwinded F . grad q on the mesh, with mirrored ghosts at the boundary.
Field2D advective_term(const Field2D& q, const ControlPoint& u,
                       const ModelParams& p, const GridSpec& grid);
Field2D advective_term(const Field2D& q, const FpCoefficientFunctions& coeffs,
                       const GridSpec& grid);

/// Backward solver for -q_t - F . grad q - sum_j C_j q_jj + G = 0 with
/// q(T) = -K and homogeneous Neumann data.
class AdjointOperator {
 public:
  AdjointOperator(const GridSpec& grid, const FpCoefficientFunctions& coeffs);
  AdjointOperator(const GridSpec& grid, const ControlPoint& u,
                  const ModelParams& p)
      : AdjointOperator(grid, model_coefficients(u, p)) {}

  /// out = F . grad q + sum_j C_j q_jj  (the spatial part, without G).
  void apply(const Field2D& q, Field2D& out) const;
  double max_rate() const { return max_rate_; }
  /// One SSP-RK3 step backward in time by dt, with source -G.
  void step(Field2D& q, const Field2D& running, double dt) const;

 private:
  GridSpec grid_;
  // Five-point stencil weights per node.
  std::vector<double> center_, west_, east_, south_, north_;
  double max_rate_ = 0.0;
  mutable Field2D s1_, s2_, tmp_;
};

AdjointField solve_adjoint(const ControlTrajectory& u, const CostSpec& cost,
                           const ModelParams& p, const GridSpec& grid,
                           const FpSolveOptions& opts = {});

/// Variant with explicit G and K fields (used for linearity checks).
AdjointField solve_adjoint(const ControlTrajectory& u, const Field2D& running,
                           const Field2D& terminal, const ModelParams& p,
                           const GridSpec& grid,
                           const FpSolveOptions& opts = {});

}  // namespace fpsir
