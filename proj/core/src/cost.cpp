#include "fpsir/cost.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fpsir/errors.hpp"

namespace fpsir {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_threshold(double t, const char* what) {
  if (!(t > 0.0 && t < 1.0))
    throw InvalidArgument(std::string(what) + " threshold must lie in (0, 1)");
}

}  // namespace

void CostSpec::validate() const {
  if (!(beta1 >= 0.0)) throw InvalidArgument("cost.beta1 must be nonnegative");
  if (!(beta2 >= 0.0)) throw InvalidArgument("cost.beta2 must be nonnegative");
  std::visit(overloaded{
                 [](const running::Zero&) {},
                 [](const running::LinearInI& g) {
                   if (!(g.coeff >= 0.0))
                     throw InvalidArgument("running cost coefficient must be nonnegative");
                 },
                 [](const running::IndicatorIAbove& g) {
                   check_threshold(g.threshold, "running cost");
                 },
             },
             running);
  std::visit(overloaded{
                 [](const terminal::Zero&) {},
                 [](const terminal::NegSusceptibleSurplus& k) {
                   check_threshold(k.threshold, "terminal cost");
                 },
             },
             terminal);
}

double control_cost(const ControlPoint& u, const CostSpec& spec) {
  const double l1 = u.npi + u.vaccination + u.treatment;
  const double l2 =
      u.npi * u.npi + u.vaccination * u.vaccination + u.treatment * u.treatment;
  return spec.beta1 * l1 + 0.5 * spec.beta2 * l2;
}

double eval_running_G(const StatePoint& x, const CostSpec& spec) {
  return std::visit(overloaded{
                        [](const running::Zero&) { return 0.0; },
                        [&](const running::LinearInI& g) { return g.coeff * x.i; },
                        [&](const running::IndicatorIAbove& g) {
                          return x.i >= g.threshold ? 1.0 : 0.0;
                        },
                    },
                    spec.running);
}

double eval_terminal_K(const StatePoint& x, const CostSpec& spec) {
  return std::visit(overloaded{
                        [](const terminal::Zero&) { return 0.0; },
                        [&](const terminal::NegSusceptibleSurplus& k) {
                          return -std::max(x.s - k.threshold, 0.0);
                        },
                    },
                    spec.terminal);
}

double running_bound(const CostSpec& spec) {
  return std::visit(overloaded{
                        [](const running::Zero&) { return 0.0; },
                        [](const running::LinearInI& g) { return g.coeff; },
                        [](const running::IndicatorIAbove&) { return 1.0; },
                    },
                    spec.running);
}

double terminal_bound(const CostSpec& spec) {
  return std::visit(overloaded{
                        [](const terminal::Zero&) { return 0.0; },
                        [](const terminal::NegSusceptibleSurplus& k) {
                          return 1.0 - k.threshold;
                        },
                    },
                    spec.terminal);
}

Field2D sample_running(const CostSpec& spec, const GridSpec& grid) {
  Field2D g(grid.nx);
  for (int i = 0; i < grid.nx; ++i)
    for (int j = 0; j < grid.nx; ++j) g(i, j) = eval_running_G(grid.point(i, j), spec);
  return g;
}

Field2D sample_terminal(const CostSpec& spec, const GridSpec& grid) {
  Field2D k(grid.nx);
  for (int i = 0; i < grid.nx; ++i)
    for (int j = 0; j < grid.nx; ++j) k(i, j) = eval_terminal_K(grid.point(i, j), spec);
  return k;
}

double time_trapezoid(std::span<const double> samples, double dt) {
  if (samples.size() < 2) return 0.0;
  double sum = 0.5 * (samples.front() + samples.back());
  for (std::size_t k = 1; k + 1 < samples.size(); ++k) sum += samples[k];
  return sum * dt;
}

CostBreakdown evaluate_J_parts(const DensityField& f, const ControlTrajectory& u,
                               const CostSpec& spec, const GridSpec& grid) {
  if (static_cast<int>(f.slices.size()) != grid.nt || u.size() != grid.nt)
    throw DimensionMismatch("density or control does not match the time grid");
  const Field2D G = sample_running(spec, grid);
  const Field2D K = sample_terminal(spec, grid);
  std::vector<double> ell(static_cast<std::size_t>(grid.nt));
  std::vector<double> run(static_cast<std::size_t>(grid.nt));
  Field2D prod(grid.nx);
  for (int k = 0; k < grid.nt; ++k) {
    ell[k] = control_cost(u[k], spec);
    const Field2D& fk = f.at(k);
    check_shape(fk, grid);
    for (std::size_t n = 0; n < prod.size(); ++n) prod[n] = G[n] * fk[n];
    run[k] = quadrature(prod, grid);
  }
  for (std::size_t n = 0; n < prod.size(); ++n) prod[n] = K[n] * f.back()[n];
  CostBreakdown out;
  out.control = time_trapezoid(ell, grid.control_dt());
  out.running = time_trapezoid(run, grid.control_dt());
  out.terminal = quadrature(prod, grid);
  return out;
}

double evaluate_J(const DensityField& f, const ControlTrajectory& u,
                  const CostSpec& spec, const GridSpec& grid) {
  return evaluate_J_parts(f, u, spec, grid).total();
}

}  // namespace fpsir
