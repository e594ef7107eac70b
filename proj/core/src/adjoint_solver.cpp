#include "fpsir/adjoint_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fpsir/errors.hpp"

namespace fpsir {

Field2D advective_term(const Field2D& q, const FpCoefficientFunctions& coeffs,
                       const GridSpec& grid) {
  check_shape(q, grid);
  const int n = grid.nx;
  const double h = grid.spacing();
  // Mirrored ghosts: q(-1) = q(1), q(n) = q(n-2).
  const auto at = [&](int i, int j) {
    if (i < 0) i = 1;
    if (i >= n) i = n - 2;
    if (j < 0) j = 1;
    if (j >= n) j = n - 2;
    return q(i, j);
  };
  Field2D out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Vec2 F = coeffs.drift(grid.point(i, j));
      const double ds = F[0] > 0.0 ? at(i + 1, j) - q(i, j) : q(i, j) - at(i - 1, j);
      const double di = F[1] > 0.0 ? at(i, j + 1) - q(i, j) : q(i, j) - at(i, j - 1);
      out(i, j) = (F[0] * ds + F[1] * di) / h;
    }
  }
  return out;
}

Field2D advective_term(const Field2D& q, const ControlPoint& u,
                       const ModelParams& p, const GridSpec& grid) {
  return advective_term(q, model_coefficients(u, p), grid);
}

AdjointOperator::AdjointOperator(const GridSpec& grid,
                                 const FpCoefficientFunctions& coeffs)
    : grid_(grid), s1_(grid.nx), s2_(grid.nx), tmp_(grid.nx) {
  grid_.validate();
  const int n = grid.nx;
  const double h = grid.spacing();
  const std::size_t nodes = grid.nodes();
  center_.assign(nodes, 0.0);
  west_.assign(nodes, 0.0);
  east_.assign(nodes, 0.0);
  south_.assign(nodes, 0.0);
  north_.assign(nodes, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const StatePoint x = grid.point(i, j);
      const Vec2 F = coeffs.drift(x);
      const Vec2 C = coeffs.diffusion(x);
      const std::size_t c = grid.index(i, j);
      // Upwinding for the backward-in-time transport.
      double w = C[0] / (h * h) + std::max(-F[0], 0.0) / h;
      double e = C[0] / (h * h) + std::max(F[0], 0.0) / h;
      double s = C[1] / (h * h) + std::max(-F[1], 0.0) / h;
      double nn = C[1] / (h * h) + std::max(F[1], 0.0) / h;
      center_[c] = -(w + e + s + nn);
      // Fold ghost weights onto the mirrored interior node.
      if (i == 0) { e += w; w = 0.0; }
      if (i == n - 1) { w += e; e = 0.0; }
      if (j == 0) { nn += s; s = 0.0; }
      if (j == n - 1) { s += nn; nn = 0.0; }
      west_[c] = w;
      east_[c] = e;
      south_[c] = s;
      north_[c] = nn;
      max_rate_ = std::max(max_rate_, -center_[c]);
    }
  }
}

void AdjointOperator::apply(const Field2D& q, Field2D& out) const {
  check_shape(q, grid_);
  const int n = grid_.nx;
  if (out.nx() != n) out = Field2D(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t c = grid_.index(i, j);
      double v = center_[c] * q(i, j);
      if (i > 0) v += west_[c] * q(i - 1, j);
      if (i < n - 1) v += east_[c] * q(i + 1, j);
      if (j > 0) v += south_[c] * q(i, j - 1);
      if (j < n - 1) v += north_[c] * q(i, j + 1);
      out(i, j) = v;
    }
  }
}

void AdjointOperator::step(Field2D& q, const Field2D& running, double dt) const {
  // dq/ds = A q - G with s = T - t, integrated by SSP-RK3.
  const std::size_t n = q.size();
  const auto rhs = [&](const Field2D& in, Field2D& out) {
    apply(in, out);
    for (std::size_t k = 0; k < n; ++k) out[k] -= running[k];
  };
  rhs(q, tmp_);
  for (std::size_t k = 0; k < n; ++k) s1_[k] = q[k] + dt * tmp_[k];
  rhs(s1_, tmp_);
  for (std::size_t k = 0; k < n; ++k)
    s2_[k] = 0.75 * q[k] + 0.25 * (s1_[k] + dt * tmp_[k]);
  rhs(s2_, tmp_);
  for (std::size_t k = 0; k < n; ++k)
    q[k] = q[k] / 3.0 + 2.0 / 3.0 * (s2_[k] + dt * tmp_[k]);
}

AdjointField solve_adjoint(const ControlTrajectory& u, const Field2D& running,
                           const Field2D& terminal, const ModelParams& p,
                           const GridSpec& grid, const FpSolveOptions& opts) {
  grid.validate();
  check_shape(running, grid);
  check_shape(terminal, grid);
  if (u.size() != grid.nt)
    throw DimensionMismatch("control trajectory has " + std::to_string(u.size()) +
                            " rows, grid has " + std::to_string(grid.nt));
  AdjointField out;
  out.grid = grid;
  out.slices.assign(static_cast<std::size_t>(grid.nt), Field2D(grid.nx));
  Field2D q = terminal;
  for (auto& v : q.values()) v = -v;
  out.slices.back() = q;
  const double span = grid.control_dt();
  for (int k = grid.nt - 2; k >= 0; --k) {
    const AdjointOperator op(grid, u[k], p);
    const double rate = op.max_rate();
    const int required =
        rate == 0.0 ? 1
                    : std::max(1, static_cast<int>(
                                      std::ceil(span * rate / opts.cfl - 1e-12)));
    if (required > grid.substeps && !opts.auto_substeps)
      throw CflViolation(grid.substeps, required);
    const int steps = std::max(required, grid.substeps);
    const double dt = span / steps;
    for (int s = 0; s < steps; ++s) op.step(q, running, dt);
    check_finite(q, "adjoint", k);
    out.slices[static_cast<std::size_t>(k)] = q;
  }
  return out;
}

AdjointField solve_adjoint(const ControlTrajectory& u, const CostSpec& cost,
                           const ModelParams& p, const GridSpec& grid,
                           const FpSolveOptions& opts) {
  return solve_adjoint(u, sample_running(cost, grid), sample_terminal(cost, grid),
                       p, grid, opts);
}

}  // namespace fpsir
