#pragma once

#include <functional>
#include <vector>

#include "fpsir/dynamics.hpp"
#include "fpsir/grid.hpp"

namespace fpsir {

/// Chang-Cooper interpolation weight for w = B h / C.  The weight multiplies
/// the downstream node in the advective flux B [delta f_{i+1} + (1-delta) f_i].
/// Falls back to full upwinding when C == 0.
double chang_cooper_weights(double advection, double diffusion, double h);

/// Coefficients of a drift-diffusion equation written in flux form
///   d_t f = sum_j d_j ( C_j d_j f - B_j f ),  B_j = F_j - d_j C_j.
/// Evaluated at face midpoints.
struct FpCoefficientFunctions {
  std::function<Vec2(const StatePoint&)> drift;
  /// Half squared noise amplitudes C_j = sigma_j^2 / 2.
  std::function<Vec2(const StatePoint&)> diffusion;
  /// d C_1 / dS and d C_2 / dI.
  std::function<Vec2(const StatePoint&)> diffusion_gradient;
};

/// Coefficient functions of the controlled model for a frozen control.
FpCoefficientFunctions model_coefficients(const ControlPoint& u,
                                          const ModelParams& p);

/// Face-centred advection, diffusion and Chang-Cooper weights for one
/// direction.  Arrays are laid out [line][face] with nx lines of nx + 1 faces;
/// faces 0 and nx lie on the boundary and stay zero.
struct FluxCoefficients {
  std::vector<double> advection;
  std::vector<double> diffusion;
  std::vector<double> weight;
};

/// Semi-discrete Chang-Cooper operator on the vertex grid, split into two
/// tridiagonal 1D operators.  Boundary nodes own half control volumes, so the
/// trapezoidal mass is conserved exactly by both directions.
class SplitFpOperator {
 public:
  SplitFpOperator(const GridSpec& grid, const FpCoefficientFunctions& coeffs);
  SplitFpOperator(const GridSpec& grid, const ControlPoint& u,
                  const ModelParams& p)
      : SplitFpOperator(grid, model_coefficients(u, p)) {}

  /// out = L_dir f.  dir 0 acts along S, dir 1 along I.
  void apply(int dir, const Field2D& f, Field2D& out) const;
  /// out = (L_0 + L_1) f.
  void apply_full(const Field2D& f, Field2D& out) const;

  /// Largest forward-Euler decay rate |diag| of direction dir.
  double max_rate(int dir) const;

  /// One SSP-RK3 step of a single direction.
  void ssp_step(int dir, Field2D& f, double dt) const;
  /// Half step dir 0, full step dir 1, half step dir 0.
  void step_strang(Field2D& f, double dt) const;
  /// One SSP-RK3 step of the unsplit operator.
  void step_unsplit(Field2D& f, double dt) const;

  /// Number of Strang steps needed to cover span at Courant number cfl.
  int required_steps(double span, double cfl) const;

  const FluxCoefficients& flux(int dir) const { return flux_[dir]; }

  /// Net flux leaving the domain through each boundary node (always zero).
  std::vector<double> boundary_flux() const;

 private:
  void apply_dir(int dir, std::span<const double> f, std::span<double> out) const;

  GridSpec grid_;
  FluxCoefficients flux_[2];
  // Tridiagonal rows per direction, laid out [line][node].
  std::vector<double> lower_[2], diag_[2], upper_[2];
  mutable Field2D s1_, s2_, tmp_;
};

struct FpSolveOptions {
  /// Forward-Euler Courant number for the explicit substeps.
  double cfl = 0.9;
  /// Increase substeps automatically instead of throwing CflViolation.
  bool auto_substeps = true;
};

/// Advances f0 through the control schedule and records every control-grid
/// time.
DensityField solve_forward(const Field2D& f0, const ControlTrajectory& u,
                           const ModelParams& p, const GridSpec& grid,
                           const FpSolveOptions& opts = {});

/// Throws NumericalFailure if any entry is NaN or Inf.
void check_finite(const Field2D& f, const char* what, int time_index);

}  // namespace fpsir
