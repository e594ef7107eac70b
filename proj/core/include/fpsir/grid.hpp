#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fpsir/dynamics.hpp"

namespace fpsir {

/// Vertex-centred tensor mesh on [lo, hi]^2 plus a uniform control-time mesh
/// on [0, horizon].
struct GridSpec {
  int nx = 41;
  int nt = 81;
  double horizon = 10.0;
  double lo = 0.0;
  double hi = 1.0;
  /// Minimum number of solver steps per control interval.
  int substeps = 1;

  void validate() const;

  double spacing() const { return (hi - lo) / (nx - 1); }
  double control_dt() const { return horizon / (nt - 1); }
  double solver_dt() const { return control_dt() / substeps; }
  double coord(int i) const { return lo + i * spacing(); }
  double time(int k) const { return k * control_dt(); }
  std::size_t nodes() const { return static_cast<std::size_t>(nx) * nx; }
  /// Flat index of node (i along S, j along I).
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * nx + j;
  }
  StatePoint point(int i, int j) const { return {coord(i), coord(j)}; }

  bool operator==(const GridSpec&) const = default;
};

/// One time slice of a scalar field on the spatial mesh.
class Field2D {
 public:
  Field2D() = default;
  explicit Field2D(int nx, double value = 0.0)
      : nx_(nx), values_(static_cast<std::size_t>(nx) * nx, value) {}

  int nx() const { return nx_; }
  std::size_t size() const { return values_.size(); }

  double& operator()(int i, int j) { return values_[static_cast<std::size_t>(i) * nx_ + j]; }
  double operator()(int i, int j) const { return values_[static_cast<std::size_t>(i) * nx_ + j]; }
  double& operator[](std::size_t n) { return values_[n]; }
  double operator[](std::size_t n) const { return values_[n]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  bool operator==(const Field2D&) const = default;

 private:
  int nx_ = 0;
  std::vector<double> values_;
};

/// Time history of a field on the control-time grid.
struct FieldHistory {
  GridSpec grid;
  std::vector<Field2D> slices;

  const Field2D& at(int k) const { return slices.at(static_cast<std::size_t>(k)); }
  const Field2D& back() const { return slices.back(); }
};

/// Probability density f(x, t_k) on the control-time grid.
struct DensityField : FieldHistory {};
/// Costate q(x, t_k) on the control-time grid.
struct AdjointField : FieldHistory {};

/// Piecewise-constant control schedule: row k holds on [t_k, t_{k+1}).
class ControlTrajectory {
 public:
  ControlTrajectory() = default;
  explicit ControlTrajectory(int nt, ControlPoint value = {})
      : rows_(static_cast<std::size_t>(nt), value) {}

  int size() const { return static_cast<int>(rows_.size()); }
  ControlPoint& operator[](int k) { return rows_[static_cast<std::size_t>(k)]; }
  const ControlPoint& operator[](int k) const { return rows_[static_cast<std::size_t>(k)]; }
  std::span<const ControlPoint> rows() const { return rows_; }

  bool admissible(const ModelParams& p) const;
  bool operator==(const ControlTrajectory&) const = default;

 private:
  std::vector<ControlPoint> rows_;
};

/// Per-axis trapezoidal weights (end weights halved).
std::vector<double> trapezoid_weights(int n, double spacing);

/// Trapezoidal quadrature of a slice over the spatial domain.
double quadrature(const Field2D& field, const GridSpec& grid);

/// Trapezoidal quadrature of a slice restricted to nodes where mask(x) holds.
template <class Pred>
double quadrature_where(const Field2D& field, const GridSpec& grid, Pred mask) {
  const auto w = trapezoid_weights(grid.nx, grid.spacing());
  double sum = 0.0;
  for (int i = 0; i < grid.nx; ++i)
    for (int j = 0; j < grid.nx; ++j)
      if (mask(grid.point(i, j))) sum += w[i] * w[j] * field(i, j);
  return sum;
}

/// Anisotropic Gaussian evaluated at the nodes and normalised to unit
/// discrete mass.
Field2D make_initial_density(const StatePoint& center, double var_s,
                             double var_i, const GridSpec& grid);
inline Field2D make_initial_density(const StatePoint& center, double variance,
                                    const GridSpec& grid) {
  return make_initial_density(center, variance, variance, grid);
}

/// Throws DimensionMismatch unless the slice matches the grid.
void check_shape(const Field2D& field, const GridSpec& grid);

}  // namespace fpsir
