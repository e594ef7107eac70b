#include "fpsir/fp_solver.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

#include "fpsir/errors.hpp"

namespace fpsir {
namespace {

// w / (e^w - 1), the Bernoulli function.  Nonnegative for every w.
double bernoulli(double w) {
  if (std::abs(w) < 1e-4) return 1.0 - 0.5 * w + w * w / 12.0;
  if (w > 700.0) return 0.0;
  return w / std::expm1(w);
}

// Shu-Osher form of the three-stage third-order SSP Runge-Kutta method.
template <class Rhs>
void ssp_rk3(Field2D& u, double dt, Rhs&& rhs, Field2D& s1, Field2D& s2,
             Field2D& tmp) {
  const std::size_t n = u.size();
  rhs(u, tmp);
  for (std::size_t k = 0; k < n; ++k) s1[k] = u[k] + dt * tmp[k];
  rhs(s1, tmp);
  for (std::size_t k = 0; k < n; ++k)
    s2[k] = 0.75 * u[k] + 0.25 * (s1[k] + dt * tmp[k]);
  rhs(s2, tmp);
  for (std::size_t k = 0; k < n; ++k)
    u[k] = u[k] / 3.0 + 2.0 / 3.0 * (s2[k] + dt * tmp[k]);
}

}  // namespace

double chang_cooper_weights(double advection, double diffusion, double h) {
  if (!(diffusion > 0.0)) {
    if (advection > 0.0) return 0.0;
    if (advection < 0.0) return 1.0;
    return 0.5;
  }
  const double w = advection * h / diffusion;
  // The closed form cancels badly for small |w|.
  if (std::abs(w) < 1e-2) {
    const double w2 = w * w;
    return 0.5 - w / 12.0 * (1.0 - w2 / 60.0 * (1.0 - w2 / 42.0));
  }
  if (!std::isfinite(w)) return w > 0.0 ? 0.0 : 1.0;
  return 1.0 / w - 1.0 / std::expm1(w);
}

FpCoefficientFunctions model_coefficients(const ControlPoint& u,
                                          const ModelParams& p) {
  return {
      [u, p](const StatePoint& x) { return drift(x, u, p); },
      [u, p](const StatePoint& x) {
        const auto s = diffusion_sq(x, u, p);
        return Vec2{0.5 * s[0], 0.5 * s[1]};
      },
      [u, p](const StatePoint& x) {
        const auto g = diffusion_sq_gradient(x, u, p);
        return Vec2{0.5 * g[0], 0.5 * g[1]};
      },
  };
}

SplitFpOperator::SplitFpOperator(const GridSpec& grid,
                                 const FpCoefficientFunctions& coeffs)
    : grid_(grid), s1_(grid.nx), s2_(grid.nx), tmp_(grid.nx) {
  grid_.validate();
  const int n = grid.nx;
  const double h = grid.spacing();
  const std::size_t faces = static_cast<std::size_t>(n) * (n + 1);
  for (int dir = 0; dir < 2; ++dir) {
    auto& fc = flux_[dir];
    fc.advection.assign(faces, 0.0);
    fc.diffusion.assign(faces, 0.0);
    fc.weight.assign(faces, 0.5);
    // Face k of a line sits between nodes k-1 and k; faces 0 and n are the
    // domain boundary and carry no flux.
    std::vector<double> plus(faces, 0.0), minus(faces, 0.0);
    for (int line = 0; line < n; ++line) {
      for (int k = 1; k < n; ++k) {
        const double along = grid.coord(k - 1) + 0.5 * h;
        const double across = grid.coord(line);
        const StatePoint x = dir == 0 ? StatePoint{along, across}
                                      : StatePoint{across, along};
        const double C = coeffs.diffusion(x)[dir];
        const double B = coeffs.drift(x)[dir] - coeffs.diffusion_gradient(x)[dir];
        const std::size_t f = static_cast<std::size_t>(line) * (n + 1) + k;
        fc.advection[f] = B;
        fc.diffusion[f] = C;
        fc.weight[f] = chang_cooper_weights(B, C, h);
        if (C > 0.0 && std::isfinite(B * h / C)) {
          const double w = B * h / C;
          plus[f] = C / h * bernoulli(w);
          minus[f] = C / h * bernoulli(-w);
        } else {
          plus[f] = std::max(-B, 0.0);
          minus[f] = std::max(B, 0.0);
        }
        // Guard the last ulp so the off-diagonals stay nonnegative.
        plus[f] = std::max(plus[f], 0.0);
        minus[f] = std::max(minus[f], 0.0);
      }
    }
    lower_[dir].assign(grid.nodes(), 0.0);
    diag_[dir].assign(grid.nodes(), 0.0);
    upper_[dir].assign(grid.nodes(), 0.0);
    for (int line = 0; line < n; ++line) {
      for (int i = 0; i < n; ++i) {
        const double vol = (i == 0 || i == n - 1) ? 0.5 * h : h;
        const std::size_t left = static_cast<std::size_t>(line) * (n + 1) + i;
        const std::size_t right = left + 1;
        const std::size_t node = static_cast<std::size_t>(line) * n + i;
        lower_[dir][node] = minus[left] / vol;
        upper_[dir][node] = plus[right] / vol;
        diag_[dir][node] = -(minus[right] + plus[left]) / vol;
      }
    }
  }
}

void SplitFpOperator::apply_dir(int dir, std::span<const double> f,
                                std::span<double> out) const {
  const int n = grid_.nx;
  const auto& lo = lower_[dir];
  const auto& di = diag_[dir];
  const auto& up = upper_[dir];
  // Line-major coefficient layout; field layout is f[i * n + j].
  for (int line = 0; line < n; ++line) {
    for (int k = 0; k < n; ++k) {
      const std::size_t c = static_cast<std::size_t>(line) * n + k;
      const auto at = [&](int kk) {
        return dir == 0 ? f[static_cast<std::size_t>(kk) * n + line]
                        : f[static_cast<std::size_t>(line) * n + kk];
      };
      double v = di[c] * at(k);
      if (k > 0) v += lo[c] * at(k - 1);
      if (k < n - 1) v += up[c] * at(k + 1);
      if (dir == 0)
        out[static_cast<std::size_t>(k) * n + line] = v;
      else
        out[static_cast<std::size_t>(line) * n + k] = v;
    }
  }
}

void SplitFpOperator::apply(int dir, const Field2D& f, Field2D& out) const {
  check_shape(f, grid_);
  if (out.nx() != grid_.nx) out = Field2D(grid_.nx);
  apply_dir(dir, f.values(), out.values());
}

void SplitFpOperator::apply_full(const Field2D& f, Field2D& out) const {
  check_shape(f, grid_);
  Field2D second(grid_.nx);
  if (out.nx() != grid_.nx) out = Field2D(grid_.nx);
  apply_dir(0, f.values(), out.values());
  apply_dir(1, f.values(), second.values());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += second[k];
}

double SplitFpOperator::max_rate(int dir) const {
  double r = 0.0;
  for (double d : diag_[dir]) r = std::max(r, -d);
  return r;
}

void SplitFpOperator::ssp_step(int dir, Field2D& f, double dt) const {
  if (dt == 0.0) return;
  ssp_rk3(
      f, dt,
      [this, dir](const Field2D& in, Field2D& out) {
        apply_dir(dir, in.values(), out.values());
      },
      s1_, s2_, tmp_);
}

void SplitFpOperator::step_strang(Field2D& f, double dt) const {
  check_shape(f, grid_);
  ssp_step(0, f, 0.5 * dt);
  ssp_step(1, f, dt);
  ssp_step(0, f, 0.5 * dt);
}

void SplitFpOperator::step_unsplit(Field2D& f, double dt) const {
  check_shape(f, grid_);
  if (dt == 0.0) return;
  Field2D second(grid_.nx);
  ssp_rk3(
      f, dt,
      [this, &second](const Field2D& in, Field2D& out) {
        apply_dir(0, in.values(), out.values());
        apply_dir(1, in.values(), second.values());
        for (std::size_t k = 0; k < out.size(); ++k) out[k] += second[k];
      },
      s1_, s2_, tmp_);
}

int SplitFpOperator::required_steps(double span, double cfl) const {
  const double rate = std::max(0.5 * max_rate(0), max_rate(1));
  if (rate == 0.0) return 1;
  return std::max(1, static_cast<int>(std::ceil(span * rate / cfl - 1e-12)));
}

std::vector<double> SplitFpOperator::boundary_flux() const {
  // Flux through faces 0 and n of every line in both directions.  These faces
  // carry zero coefficients, so the assembled boundary flux is exactly zero
  // for any density.
  const int n = grid_.nx;
  std::vector<double> out;
  out.reserve(4 * static_cast<std::size_t>(n));
  for (int dir = 0; dir < 2; ++dir) {
    const auto& fc = flux_[dir];
    for (int line = 0; line < n; ++line) {
      for (int k : {0, n}) {
        const std::size_t f = static_cast<std::size_t>(line) * (n + 1) + k;
        out.push_back(fc.diffusion[f] + fc.advection[f]);
      }
    }
  }
  return out;
}

void check_finite(const Field2D& f, const char* what, int time_index) {
  for (double v : f.values())
    if (!std::isfinite(v))
      throw NumericalFailure(std::string("non-finite value in ") + what +
                             " at time index " + std::to_string(time_index));
}

DensityField solve_forward(const Field2D& f0, const ControlTrajectory& u,
                           const ModelParams& p, const GridSpec& grid,
                           const FpSolveOptions& opts) {
  grid.validate();
  check_shape(f0, grid);
  if (u.size() != grid.nt)
    throw DimensionMismatch("control trajectory has " + std::to_string(u.size()) +
                            " rows, grid has " + std::to_string(grid.nt));
  for (double v : f0.values())
    if (!(v >= 0.0)) throw InvalidArgument("initial density must be nonnegative");

  DensityField out;
  out.grid = grid;
  out.slices.reserve(static_cast<std::size_t>(grid.nt));
  out.slices.push_back(f0);
  Field2D f = f0;
  const double span = grid.control_dt();
  for (int k = 0; k + 1 < grid.nt; ++k) {
    const SplitFpOperator op(grid, u[k], p);
    const int required = op.required_steps(span, opts.cfl);
    if (required > grid.substeps && !opts.auto_substeps)
      throw CflViolation(grid.substeps, required);
    const int steps = std::max(required, grid.substeps);
    const double dt = span / steps;
    for (int s = 0; s < steps; ++s) op.step_strang(f, dt);
    check_finite(f, "density", k + 1);
#ifndef NDEBUG
    for (double v : f.values()) assert(v >= 0.0);
#endif
    out.slices.push_back(f);
  }
  return out;
}

}  // namespace fpsir
