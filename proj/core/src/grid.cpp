#include "fpsir/grid.hpp"

#include <cmath>

#include "fpsir/errors.hpp"

namespace fpsir {

void GridSpec::validate() const {
  if (nx < 3) throw InvalidArgument("grid.nx must be >= 3");
  if (nt < 2) throw InvalidArgument("grid.nt must be >= 2");
  if (!(horizon > 0.0)) throw InvalidArgument("grid.T must be positive");
  if (!(hi > lo)) throw InvalidArgument("grid.x_hi must exceed grid.x_lo");
  if (substeps < 1) throw InvalidArgument("grid.substeps must be >= 1");
}

bool ControlTrajectory::admissible(const ModelParams& p) const {
  for (const auto& row : rows_)
    if (!fpsir::admissible(row, p)) return false;
  return true;
}

std::vector<double> trapezoid_weights(int n, double spacing) {
  std::vector<double> w(static_cast<std::size_t>(n), spacing);
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

void check_shape(const Field2D& field, const GridSpec& grid) {
  if (field.nx() != grid.nx || field.size() != grid.nodes())
    throw DimensionMismatch("field has " + std::to_string(field.nx()) +
                            " points per axis, grid has " +
                            std::to_string(grid.nx));
}

double quadrature(const Field2D& field, const GridSpec& grid) {
  check_shape(field, grid);
  const auto w = trapezoid_weights(grid.nx, grid.spacing());
  double sum = 0.0;
  for (int i = 0; i < grid.nx; ++i) {
    double row = 0.0;
    for (int j = 0; j < grid.nx; ++j) row += w[j] * field(i, j);
    sum += w[i] * row;
  }
  return sum;
}

Field2D make_initial_density(const StatePoint& center, double var_s,
                             double var_i, const GridSpec& grid) {
  if (!(var_s > 0.0) || !(var_i > 0.0))
    throw InvalidArgument("initial variance must be positive");
  Field2D f(grid.nx);
  for (int i = 0; i < grid.nx; ++i) {
    const double ds = grid.coord(i) - center.s;
    for (int j = 0; j < grid.nx; ++j) {
      const double di = grid.coord(j) - center.i;
      f(i, j) = std::exp(-0.5 * (ds * ds / var_s + di * di / var_i));
    }
  }
  const double mass = quadrature(f, grid);
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw InvalidArgument("initial density vanishes on the domain");
  for (auto& v : f.values()) v /= mass;
  return f;
}

}  // namespace fpsir
