#include "fpsir/mc_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "fpsir/errors.hpp"

namespace fpsir {
namespace {

double reflect(double x, double lo, double hi) {
  for (int k = 0; k < 8 && (x < lo || x > hi); ++k) {
    if (x < lo) x = 2.0 * lo - x;
    if (x > hi) x = 2.0 * hi - x;
  }
  return std::clamp(x, lo, hi);
}

}  // namespace

InitialSampler truncated_gaussian_sampler(StatePoint center, double var_s,
                                          double var_i, double lo, double hi,
                                          int max_tries) {
  if (!(var_s > 0.0) || !(var_i > 0.0))
    throw InvalidArgument("sampler variance must be positive");
  return [=](std::mt19937_64& rng) {
    std::normal_distribution<double> ns(center.s, std::sqrt(var_s));
    std::normal_distribution<double> ni(center.i, std::sqrt(var_i));
    for (int t = 0; t < max_tries; ++t) {
      const StatePoint x{ns(rng), ni(rng)};
      if (x.s >= lo && x.s <= hi && x.i >= lo && x.i <= hi) return x;
    }
    throw InvalidArgument("initial sampler produced no in-domain point");
  };
}

InitialSampler point_sampler(StatePoint x0) {
  return [x0](std::mt19937_64&) { return x0; };
}

std::vector<EnsembleSnapshot> em_ensemble(const InitialSampler& sampler,
                                          const ControlTrajectory& u,
                                          const ModelParams& p,
                                          const GridSpec& grid,
                                          const EnsembleSpec& spec,
                                          std::span<const double> snapshot_times) {
  grid.validate();
  if (spec.n_paths < 1) throw InvalidArgument("n_paths must be >= 1");
  if (!(spec.dt_em > 0.0) || spec.dt_em > grid.control_dt() * (1.0 + 1e-12))
    throw InvalidArgument("dt_em must lie in (0, dt_control]");
  if (u.size() != grid.nt)
    throw DimensionMismatch("control trajectory does not match the time grid");

  std::vector<long> snap_step;
  std::vector<EnsembleSnapshot> out;
  for (double t : snapshot_times) {
    if (t < 0.0 || t > grid.horizon * (1.0 + 1e-12))
      throw InvalidArgument("snapshot time outside [0, T]");
    snap_step.push_back(std::lround(t / spec.dt_em));
    out.push_back({t, std::vector<StatePoint>(static_cast<std::size_t>(spec.n_paths))});
  }
  const long last = snap_step.empty() ? 0 : *std::max_element(snap_step.begin(), snap_step.end());
  const double sqrt_dt = std::sqrt(spec.dt_em);
  const double amp = std::sqrt(p.noise_coeff);
  const double lo = grid.lo, hi = grid.hi;

  for (int path = 0; path < spec.n_paths; ++path) {
    std::mt19937_64 rng(spec.seed ^ static_cast<std::uint64_t>(path));
    std::normal_distribution<double> normal(0.0, 1.0);
    StatePoint x = sampler(rng);
    for (long n = 0;; ++n) {
      for (std::size_t s = 0; s < snap_step.size(); ++s)
        if (snap_step[s] == n) out[s].points[static_cast<std::size_t>(path)] = x;
      if (n == last) break;
      const double t = static_cast<double>(n) * spec.dt_em;
      const int k = std::min(grid.nt - 2,
                             static_cast<int>(std::floor(t / grid.control_dt() + 1e-9)));
      const ControlPoint& uk = u[k];
      const Vec2 F = drift(x, uk, p);
      const double sigma = amp * std::abs((1.0 - uk.npi) * x.s * x.i);
      const double xi_s = normal(rng);
      const double xi_i = normal(rng);
      StatePoint next{x.s + F[0] * spec.dt_em + sigma * sqrt_dt * xi_s,
                      x.i + F[1] * spec.dt_em + sigma * sqrt_dt * xi_i};
      if (spec.boundary == BoundaryPolicy::Reflect) {
        next.s = reflect(next.s, lo, hi);
        next.i = reflect(next.i, lo, hi);
      } else {
        next.s = std::clamp(next.s, lo, hi);
        next.i = std::clamp(next.i, lo, hi);
      }
      x = next;
    }
  }
  return out;
}

Field2D histogram_density(std::span<const StatePoint> points, const GridSpec& grid) {
  if (points.empty()) throw InvalidArgument("histogram of an empty snapshot");
  const int n = grid.nx;
  const double h = grid.spacing();
  std::vector<long> counts(grid.nodes(), 0);
  for (const auto& x : points) {
    const int i = std::clamp(static_cast<int>(std::lround((x.s - grid.lo) / h)), 0, n - 1);
    const int j = std::clamp(static_cast<int>(std::lround((x.i - grid.lo) / h)), 0, n - 1);
    ++counts[grid.index(i, j)];
  }
  const auto w = trapezoid_weights(n, h);
  const double total = static_cast<double>(points.size());
  Field2D f(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      f(i, j) = static_cast<double>(counts[grid.index(i, j)]) / (total * w[i] * w[j]);
  return f;
}

double l1_distance(const Field2D& a, const Field2D& b, const GridSpec& grid) {
  check_shape(a, grid);
  check_shape(b, grid);
  Field2D d(grid.nx);
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = std::abs(a[k] - b[k]);
  return quadrature(d, grid);
}

std::vector<Sir3State> rk4_sir3(double s0, double i0, double r0,
                                const ControlTrajectory& u, const ModelParams& p,
                                const GridSpec& grid, int substeps) {
  if (s0 < 0.0 || i0 < 0.0 || r0 < 0.0)
    throw InvalidArgument("initial compartments must be nonnegative");
  if (u.size() != grid.nt)
    throw DimensionMismatch("control trajectory does not match the time grid");
  if (substeps < 1) throw InvalidArgument("substeps must be >= 1");
  std::vector<Sir3State> out;
  out.reserve(static_cast<std::size_t>(grid.nt));
  Vec3 y{s0, i0, r0};
  out.push_back({0.0, s0, i0, r0});
  const double dt = grid.control_dt() / substeps;
  for (int k = 0; k + 1 < grid.nt; ++k) {
    const ControlPoint& uk = u[k];
    const auto f = [&](const Vec3& v) { return sir3_rhs(v[0], v[1], v[2], uk, p); };
    const auto axpy = [](const Vec3& a, double s, const Vec3& b) {
      return Vec3{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]};
    };
    for (int s = 0; s < substeps; ++s) {
      const Vec3 k1 = f(y);
      const Vec3 k2 = f(axpy(y, 0.5 * dt, k1));
      const Vec3 k3 = f(axpy(y, 0.5 * dt, k2));
      const Vec3 k4 = f(axpy(y, dt, k3));
      for (int c = 0; c < 3; ++c)
        y[c] += dt / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    }
    out.push_back({grid.time(k + 1), y[0], y[1], y[2]});
  }
  return out;
}

SampleMoments mean_infected(const EnsembleSnapshot& snap) {
  const auto n = static_cast<double>(snap.points.size());
  if (snap.points.empty()) throw InvalidArgument("empty snapshot");
  double mean = 0.0;
  for (const auto& x : snap.points) mean += x.i;
  mean /= n;
  double var = 0.0;
  for (const auto& x : snap.points) var += (x.i - mean) * (x.i - mean);
  var /= std::max(1.0, n - 1.0);
  return {mean, std::sqrt(var / n)};
}

}  // namespace fpsir
