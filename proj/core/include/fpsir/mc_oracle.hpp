#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "fpsir/dynamics.hpp"
#include "fpsir/grid.hpp"

namespace fpsir {

enum class BoundaryPolicy { Reflect, ClampToDomain };

struct EnsembleSpec {
  int n_paths = 100000;
  double dt_em = 0.0125;
  std::uint64_t seed = 20240601;
  BoundaryPolicy boundary = BoundaryPolicy::Reflect;
};

/// Draws an initial state using the supplied per-path engine.
using InitialSampler = std::function<StatePoint(std::mt19937_64&)>;

/// Rejection sampler for a Gaussian truncated to [lo, hi]^2.  Throws
/// InvalidArgument when max_tries draws all fall outside the domain.
InitialSampler truncated_gaussian_sampler(StatePoint center, double var_s,
                                          double var_i, double lo, double hi,
                                          int max_tries = 10000);

/// Sampler that always returns x0.
InitialSampler point_sampler(StatePoint x0);

struct EnsembleSnapshot {
  double time = 0.0;
  std::vector<StatePoint> points;
};

/// Euler-Maruyama paths of the reduced SDE with independent noise channels.
/// Path p uses an engine seeded from (seed, p), so results do not depend on
/// evaluation order.
std::vector<EnsembleSnapshot> em_ensemble(const InitialSampler& sampler,
                                          const ControlTrajectory& u,
                                          const ModelParams& p,
                                          const GridSpec& grid,
                                          const EnsembleSpec& spec,
                                          std::span<const double> snapshot_times);

/// Nearest-node histogram normalised to unit trapezoidal mass.
Field2D histogram_density(std::span<const StatePoint> points,
                          const GridSpec& grid);

/// Trapezoidal quadrature of |a - b|.
double l1_distance(const Field2D& a, const Field2D& b, const GridSpec& grid);

struct Sir3State {
  double t = 0.0, s = 0.0, i = 0.0, r = 0.0;
};

/// Classical RK4 on the control grid with zero-order-hold controls; returns
/// one state per control-grid time.
std::vector<Sir3State> rk4_sir3(double s0, double i0, double r0,
                                const ControlTrajectory& u, const ModelParams& p,
                                const GridSpec& grid, int substeps = 20);

/// Mean and standard error of a sample.
struct SampleMoments {
  double mean = 0.0;
  double std_error = 0.0;
};
SampleMoments mean_infected(const EnsembleSnapshot& snap);

}  // namespace fpsir
