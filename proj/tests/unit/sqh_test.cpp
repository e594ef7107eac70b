#include "fpsir/sqh.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fpsir/adjoint_solver.hpp"
#include "fpsir/errors.hpp"
#include "fpsir/hamiltonian.hpp"
#include "fpsir/scenario.hpp"

namespace fpsir {
namespace {

SqhProblem coarse_problem(RunningCost running) {
  SqhProblem pr;
  pr.grid.nx = 21;
  pr.grid.nt = 41;
  pr.cost.running = running;
  pr.initial = make_initial_density({0.99, 0.01}, 0.025, pr.grid);
  pr.initial_control = ControlTrajectory(pr.grid.nt);
  return pr;
}

TEST(TauNorm, Examples) {
  const GridSpec g;
  ControlTrajectory a(g.nt, {0.3, 0.05, 0.1});
  EXPECT_EQ(tau_norm(a, a, g), 0.0);
  ControlTrajectory b = a;
  for (int k = 0; k < g.nt; ++k) b[k].npi += 1.0;
  EXPECT_NEAR(tau_norm(a, b, g), 10.0, 1e-12);
  ControlTrajectory ramp(g.nt);
  for (int k = 0; k < g.nt; ++k) ramp[k].npi = g.time(k) / g.horizon;
  EXPECT_NEAR(tau_norm(ramp, ControlTrajectory(g.nt), g), 10.0 / 3.0, 1e-3);
  EXPECT_THROW(tau_norm(a, ControlTrajectory(g.nt - 1), g), DimensionMismatch);
}

TEST(Sqh, ControlCostOnlyKeepsZeroControl) {
  auto pr = coarse_problem(running::Zero{});
  const auto r = run_sqh(pr);
  EXPECT_EQ(r.trace.status, SqhStatus::ConvergedTau);
  ASSERT_EQ(r.trace.entries.size(), 1u);
  EXPECT_LT(r.trace.entries[0].tau, pr.sqh.kappa);
  EXPECT_EQ(r.control, ControlTrajectory(pr.grid.nt));
  EXPECT_EQ(r.trace.entries[0].J, 0.0);
}

// Worst gap between H at the returned control and the pointwise minimum of H.
double worst_pmp_gap(const SqhProblem& pr, const SqhResult& r) {
  const auto q = solve_adjoint(r.control, pr.cost, pr.model, pr.grid);
  double worst = 0.0;
  for (int k = 0; k < pr.grid.nt; ++k) {
    const auto h = extract_coeffs(r.density.at(k), q.at(k), pr.cost, pr.model, pr.grid);
    ControlPoint best;
    for (int c = 0; c < 3; ++c)
      best[c] = minimize_quadratic(h.quad[c], h.lin[c], 0.0, control_upper(pr.model, c));
    worst = std::max(worst, h.eval(r.control[k]) - h.eval(best));
  }
  return worst;
}

class Scenario1Run : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    problem_ = new SqhProblem(preset("scenario1").problem());
    result_ = new SqhResult(run_sqh(*problem_));
  }
  static void TearDownTestSuite() {
    delete result_;
    delete problem_;
  }
  static SqhProblem* problem_;
  static SqhResult* result_;
};
SqhProblem* Scenario1Run::problem_ = nullptr;
SqhResult* Scenario1Run::result_ = nullptr;

TEST_F(Scenario1Run, Converges) {
  EXPECT_EQ(result_->trace.status, SqhStatus::ConvergedTau);
  EXPECT_GT(result_->trace.accepted_count(), 0);
  EXPECT_LT(result_->trace.accepted_count(), problem_->sqh.k_max);
}

TEST_F(Scenario1Run, AcceptedStepsSatisfyDescent) {
  double last = result_->trace.J0;
  for (const auto& e : result_->trace.entries) {
    if (!e.accepted) continue;
    EXPECT_LE(e.J - e.J_prev, -problem_->sqh.mu * e.tau);
    EXPECT_EQ(e.J_prev, last);
    EXPECT_LT(e.J, last);
    last = e.J;
  }
}

TEST_F(Scenario1Run, EpsTrajectoryFollowsAcceptance) {
  const auto& es = result_->trace.entries;
  ASSERT_FALSE(es.empty());
  EXPECT_EQ(es[0].eps, problem_->sqh.eps0);
  for (std::size_t n = 1; n < es.size(); ++n) {
    const double factor = es[n - 1].accepted ? problem_->sqh.zeta : problem_->sqh.lambda;
    EXPECT_EQ(es[n].eps, es[n - 1].eps * factor);
    EXPECT_EQ(es[n].retries, es[n - 1].accepted ? 0 : es[n - 1].retries + 1);
  }
}

TEST_F(Scenario1Run, FinalControlAdmissibleAndConsistent) {
  const auto& pr = *problem_;
  EXPECT_TRUE(result_->control.admissible(pr.model));
  const auto f = solve_forward(pr.initial, result_->control, pr.model, pr.grid);
  EXPECT_EQ(f.slices, result_->density.slices);
}

TEST_F(Scenario1Run, ApproximatelySatisfiesMinimumPrinciple) {
  const auto& pr = *problem_;
  const auto q = solve_adjoint(result_->control, pr.cost, pr.model, pr.grid);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int k = 0; k < pr.grid.nt; k += 4) {
    const auto h = extract_coeffs(result_->density.at(k), q.at(k), pr.cost, pr.model, pr.grid);
    const double at_opt = h.eval(result_->control[k]);
    for (int trial = 0; trial < 50; ++trial) {
      ControlPoint w;
      for (int c = 0; c < 3; ++c) w[c] = uni(rng) * control_upper(pr.model, c);
      EXPECT_LE(at_opt, h.eval(w) + 1e-3 * (1.0 + std::abs(at_opt))) << "k=" << k;
    }
  }
}

TEST_F(Scenario1Run, MinimumPrincipleGapShrinksUnderRefinement) {
  auto coarse = coarse_problem(running::LinearInI{1.5});
  const double gap_coarse = worst_pmp_gap(coarse, run_sqh(coarse));
  const double gap_fine = worst_pmp_gap(*problem_, *result_);
  EXPECT_LT(gap_fine, 0.5 * gap_coarse) << "coarse=" << gap_coarse << " fine=" << gap_fine;
}

TEST(Sqh, StallsAfterRepeatedRejections) {
  auto pr = coarse_problem(running::LinearInI{1.5});
  pr.sqh.mu = 1e6;
  pr.sqh.inner_max = 3;
  const auto r = run_sqh(pr);
  EXPECT_EQ(r.trace.status, SqhStatus::StalledEps);
  ASSERT_EQ(r.trace.entries.size(), 3u);
  for (const auto& e : r.trace.entries) EXPECT_FALSE(e.accepted);
  EXPECT_EQ(r.control, pr.initial_control);
}

TEST(Sqh, StopsAtIterationCap) {
  auto pr = coarse_problem(running::LinearInI{1.5});
  pr.sqh.k_max = 1;
  const auto r = run_sqh(pr);
  EXPECT_EQ(r.trace.status, SqhStatus::MaxIter);
  EXPECT_EQ(r.trace.accepted_count(), 1);
}

TEST(Sqh, RejectsInvalidSetup) {
  auto pr = coarse_problem(running::Zero{});
  pr.sqh.zeta = 1.0;
  EXPECT_THROW(run_sqh(pr), InvalidArgument);
  pr = coarse_problem(running::Zero{});
  pr.initial_control = ControlTrajectory(pr.grid.nt, {0.9, 0.0, 0.0});
  EXPECT_THROW(run_sqh(pr), InvalidArgument);
  pr = coarse_problem(running::Zero{});
  pr.initial_control = ControlTrajectory(3);
  EXPECT_THROW(run_sqh(pr), DimensionMismatch);
}

TEST(Sqh, StatusNames) {
  EXPECT_EQ(to_string(SqhStatus::ConvergedTau), "converged_tau");
  EXPECT_EQ(to_string(SqhStatus::MaxIter), "max_iter");
  EXPECT_EQ(to_string(SqhStatus::StalledEps), "stalled_eps");
}

}  // namespace
}  // namespace fpsir
