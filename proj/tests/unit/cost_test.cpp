#include "fpsir/cost.hpp"

#include <random>

#include <gtest/gtest.h>

#include "fpsir/errors.hpp"
#include "fpsir/fp_solver.hpp"
#include "fpsir/mc_oracle.hpp"

namespace fpsir {
namespace {

CostSpec scenario1_costs() {
  CostSpec c;
  c.running = running::LinearInI{1.5};
  return c;
}

TEST(ControlCost, Examples) {
  const CostSpec c;
  EXPECT_EQ(control_cost({0.0, 0.0, 0.0}, c), 0.0);
  EXPECT_NEAR(control_cost({1.0, 1.0, 1.0}, c), 0.75, 1e-15);
  // 0.2 * 1.2 + 0.05 * (0.7225 + 0.01 + 0.0625)
  EXPECT_NEAR(control_cost({0.85, 0.1, 0.25}, c), 0.27975, 1e-15);
}

TEST(ControlCost, Convex) {
  const CostSpec c;
  const ModelParams p;
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    ControlPoint a, b, m;
    for (int k = 0; k < 3; ++k) {
      a[k] = uni(rng) * control_upper(p, k);
      b[k] = uni(rng) * control_upper(p, k);
      m[k] = 0.5 * (a[k] + b[k]);
    }
    EXPECT_LE(control_cost(m, c), 0.5 * (control_cost(a, c) + control_cost(b, c)) + 1e-15);
  }
}

TEST(RunningCost, Variants) {
  CostSpec c;
  EXPECT_EQ(eval_running_G({0.4, 0.7}, c), 0.0);
  c.running = running::LinearInI{1.5};
  EXPECT_NEAR(eval_running_G({0.4, 0.2}, c), 0.3, 1e-15);
  c.running = running::IndicatorIAbove{0.15};
  EXPECT_EQ(eval_running_G({0.4, 0.15}, c), 1.0);
  EXPECT_EQ(eval_running_G({0.4, 0.1499}, c), 0.0);
}

TEST(TerminalCost, Variants) {
  CostSpec c;
  EXPECT_EQ(eval_terminal_K({0.9, 0.1}, c), 0.0);
  c.terminal = terminal::NegSusceptibleSurplus{0.3};
  EXPECT_NEAR(eval_terminal_K({0.5, 0.1}, c), -0.2, 1e-15);
  EXPECT_EQ(eval_terminal_K({0.3, 0.1}, c), 0.0);
  EXPECT_EQ(eval_terminal_K({0.1, 0.1}, c), 0.0);
}

TEST(CostSpec, ValidateRejectsBadValues) {
  CostSpec c;
  c.beta1 = -0.1;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.running = running::IndicatorIAbove{1.0};
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.running = running::LinearInI{-1.0};
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.terminal = terminal::NegSusceptibleSurplus{0.0};
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(TimeTrapezoid, IntegratesLinearExactly) {
  std::vector<double> v(81);
  for (int k = 0; k < 81; ++k) v[k] = 2.0 + 0.125 * k;
  EXPECT_NEAR(time_trapezoid(v, 0.125), 2.0 * 10.0 + 0.5 * 100.0, 1e-12);
}

class ObjectiveTest : public ::testing::Test {
 protected:
  GridSpec g;
  ModelParams p;
  DensityField f = solve_forward(make_initial_density({0.99, 0.01}, 0.025, g),
                                 ControlTrajectory(g.nt), p, g);
};

TEST_F(ObjectiveTest, ZeroCostsGiveZero) {
  CostSpec c;
  c.beta1 = 0.0;
  c.beta2 = 0.0;
  EXPECT_EQ(evaluate_J(f, ControlTrajectory(g.nt), c, g), 0.0);
}

TEST_F(ObjectiveTest, ConstantTerminalCostEqualsMass) {
  // A constant K is not expressible as a CostSpec variant; integrate it
  // directly against the terminal slice.
  EXPECT_NEAR(0.42 * quadrature(f.back(), g), 0.42, 1e-8);
  EXPECT_EQ(evaluate_J_parts(f, ControlTrajectory(g.nt), CostSpec{}, g).terminal, 0.0);
}

TEST_F(ObjectiveTest, PartsSumToTotal) {
  CostSpec c = scenario1_costs();
  c.terminal = terminal::NegSusceptibleSurplus{0.3};
  const ControlTrajectory u(g.nt, {0.2, 0.05, 0.1});
  const auto parts = evaluate_J_parts(f, u, c, g);
  EXPECT_NEAR(parts.control, 10.0 * control_cost(u[0], c), 1e-12);
  EXPECT_DOUBLE_EQ(parts.total(), evaluate_J(f, u, c, g));
}

TEST_F(ObjectiveTest, MonotoneInRunningCost) {
  CostSpec low = scenario1_costs(), high = scenario1_costs();
  high.running = running::LinearInI{2.0};
  const ControlTrajectory u(g.nt);
  EXPECT_LT(evaluate_J(f, u, low, g), evaluate_J(f, u, high, g));
}

TEST_F(ObjectiveTest, BoundedBelow) {
  CostSpec c = scenario1_costs();
  c.terminal = terminal::NegSusceptibleSurplus{0.3};
  const double bound = -terminal_bound(c) - g.horizon * running_bound(c);
  EXPECT_GE(evaluate_J(f, ControlTrajectory(g.nt), c, g), bound);
  EXPECT_DOUBLE_EQ(running_bound(c), 1.5);
  EXPECT_DOUBLE_EQ(terminal_bound(c), 0.7);
}

TEST_F(ObjectiveTest, RejectsShapeMismatch) {
  EXPECT_THROW(evaluate_J(f, ControlTrajectory(g.nt - 1), CostSpec{}, g), DimensionMismatch);
}

TEST_F(ObjectiveTest, RunningCostMatchesMonteCarloExpectation) {
  const auto J = evaluate_J(f, ControlTrajectory(g.nt), scenario1_costs(), g);
  EnsembleSpec spec;
  spec.n_paths = 100000;
  spec.dt_em = g.control_dt() / 10.0;
  std::vector<double> times(static_cast<std::size_t>(g.nt));
  for (int k = 0; k < g.nt; ++k) times[k] = g.time(k);
  const auto snaps = em_ensemble(truncated_gaussian_sampler({0.99, 0.01}, 0.025, 0.025, 0, 1),
                                 ControlTrajectory(g.nt), p, g, spec, times);
  std::vector<double> mean_i(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) mean_i[k] = mean_infected(snaps[k]).mean;
  const double mc = 1.5 * time_trapezoid(mean_i, g.control_dt());
  EXPECT_NEAR(J / mc, 1.0, 0.05) << "J=" << J << " mc=" << mc;
}

}  // namespace
}  // namespace fpsir
