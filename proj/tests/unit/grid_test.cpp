#include "fpsir/grid.hpp"

#include <algorithm>

#include <gtest/gtest.h>

#include "fpsir/errors.hpp"

namespace fpsir {
namespace {

TEST(Grid, DefaultSpacing) {
  const GridSpec g;
  EXPECT_EQ(g.nx, 41);
  EXPECT_EQ(g.nt, 81);
  EXPECT_DOUBLE_EQ(g.spacing(), 1.0 / 40.0);
  EXPECT_DOUBLE_EQ(g.control_dt(), 0.125);
  EXPECT_DOUBLE_EQ(g.coord(40), 1.0);
  EXPECT_DOUBLE_EQ(g.time(80), 10.0);
}

TEST(Grid, ValidateRejectsDegenerateGrids) {
  GridSpec g;
  g.nx = 2;
  EXPECT_THROW(g.validate(), InvalidArgument);
  g = {};
  g.nt = 1;
  EXPECT_THROW(g.validate(), InvalidArgument);
  g = {};
  g.substeps = 0;
  EXPECT_THROW(g.validate(), InvalidArgument);
  g = {};
  g.hi = g.lo;
  EXPECT_THROW(g.validate(), InvalidArgument);
}

TEST(Grid, QuadratureExactForBilinear) {
  const GridSpec g;
  Field2D one(g.nx, 1.0), x1(g.nx), x1x2(g.nx);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.nx; ++j) {
      x1(i, j) = g.coord(i);
      x1x2(i, j) = g.coord(i) * g.coord(j);
    }
  EXPECT_NEAR(quadrature(one, g), 1.0, 1e-13);
  EXPECT_NEAR(quadrature(x1, g), 0.5, 1e-12);
  EXPECT_NEAR(quadrature(x1x2, g), 0.25, 1e-12);
}

TEST(Grid, QuadratureRejectsShapeMismatch) {
  const GridSpec g;
  EXPECT_THROW(quadrature(Field2D(21), g), DimensionMismatch);
}

TEST(Grid, QuadratureWhereMasksNodes) {
  const GridSpec g;
  const Field2D one(g.nx, 1.0);
  const double all = quadrature_where(one, g, [](const StatePoint&) { return true; });
  EXPECT_NEAR(all, 1.0, 1e-13);
  const double none = quadrature_where(one, g, [](const StatePoint&) { return false; });
  EXPECT_EQ(none, 0.0);
}

TEST(Grid, InitialDensityNormalised) {
  const GridSpec g;
  const auto f = make_initial_density({0.5, 0.5}, 0.025, g);
  EXPECT_NEAR(quadrature(f, g), 1.0, 1e-12);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.nx; ++j) EXPECT_NEAR(f(i, j), f(j, i), 1e-12);
}

TEST(Grid, InitialDensityPeaksAtNearestNode) {
  const GridSpec g;
  const auto f = make_initial_density({0.99, 0.01}, 0.025, g);
  const auto v = f.values();
  const auto at = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
  EXPECT_EQ(at, g.index(40, 0));
  EXPECT_TRUE(std::all_of(v.begin(), v.end(), [](double x) { return x >= 0.0; }));
}

TEST(Grid, InitialDensityStableUnderRenormalisation) {
  const GridSpec g;
  auto f = make_initial_density({0.99, 0.01}, 0.025, g);
  const auto before = f;
  const double m = quadrature(f, g);
  for (auto& x : f.values()) x /= m;
  for (std::size_t n = 0; n < f.size(); ++n) EXPECT_NEAR(f[n], before[n], 1e-12);
}

TEST(Grid, InitialDensityRejectsBadInput) {
  const GridSpec g;
  EXPECT_THROW(make_initial_density({0.5, 0.5}, 0.0, g), InvalidArgument);
  EXPECT_THROW(make_initial_density({0.5, 0.5}, -1.0, g), InvalidArgument);
  EXPECT_THROW(make_initial_density({80.0, 80.0}, 1e-3, g), InvalidArgument);
}

TEST(Grid, ControlTrajectoryAdmissibility) {
  const ModelParams p;
  ControlTrajectory u(5, {0.85, 0.1, 0.25});
  EXPECT_TRUE(u.admissible(p));
  u[3].npi = 0.9;
  EXPECT_FALSE(u.admissible(p));
}

}  // namespace
}  // namespace fpsir
