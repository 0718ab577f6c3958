#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "pointnls/reconstruction.hpp"

using namespace pointnls;

namespace {
SolverConfig config(double dt, double T, bool nonlinear = true) {
  SolverConfig c;
  c.dt = dt;
  c.T = T;
  c.nonlinear = nonlinear;
  return c;
}
InitialDatum gaussian(double A) { return InitialDatum::gaussian({A, 1.0, 0.0, 0.0}); }
FieldSnapshot sample(const SpatialGrid& g, auto f) {
  FieldSnapshot s{g, std::vector<cplx>(g.size()), 0.0};
  for (std::size_t i = 0; i < g.size(); ++i) s.values[i] = f(g.x(i));
  return s;
}
double phi0(double x) { return std::pow(2.0, 0.25) * std::exp(-std::abs(x)); }
}  // namespace

TEST(Reconstruct, TimeZeroIsDatum) {
  const auto d = InitialDatum::gaussian({0.9, 1.2, 0.1, 0.4});
  const auto traj = solve_charge(d, config(1e-2, 0.5));
  const SpatialGrid g(5.0, 0.25);
  const auto snap = reconstruct(traj, d, 0.0, g);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(snap.values[i], d.value(g.x(i)));
  EXPECT_EQ(snap.t, 0.0);
}

TEST(Reconstruct, GroundStateRotatesInPlace) {
  const auto d = InitialDatum::ground_state(5.0);
  const auto traj = solve_charge(d, config(1e-3, 1.0));
  ASSERT_TRUE(traj.completed());
  const SpatialGrid g(20.0, 1.0 / 64.0);
  const auto snap = reconstruct(traj, d, 1.0, g, 4);
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(snap.values[i] - std::polar(phi0(g.x(i)), 1.0)));
  EXPECT_LT(err, 1e-3);
}

TEST(Reconstruct, LinearGaussianMatchesClosedForm) {
  const auto d = gaussian(1.0);
  const auto traj = solve_charge(d, config(1e-3, 1.0, false));
  const SpatialGrid g(10.0, 1.0 / 16.0);
  const auto snap = reconstruct(traj, d, 1.0, g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.x(i);
    const cplx ref = std::exp(-x * x / cplx(1.0, 4.0)) / std::sqrt(cplx(1.0, 4.0));
    EXPECT_LE(std::abs(snap.values[i] - ref), 1e-6);
  }
}

TEST(Reconstruct, OriginMatchesCharge) {
  const auto d = gaussian(1.0);
  const auto traj = solve_charge(d, config(1e-3, 1.0));
  const SpatialGrid g(2.0, 0.5);
  const std::vector<double> times{0.1, 0.37, 1.0};
  const auto snaps = reconstruct_many(traj, d, times, g);
  for (std::size_t s = 0; s < times.size(); ++s)
    EXPECT_LE(std::abs(snaps[s].origin_value() - traj.q[traj.grid.index_of(times[s])]), 1e-13);
}

TEST(Reconstruct, ManyMatchesSingleAndThreads) {
  const auto d = gaussian(0.9);
  const auto traj = solve_charge(d, config(1e-3, 0.5));
  const SpatialGrid g(6.0, 0.125);
  const std::vector<double> times{0.2, 0.5};
  const auto many = reconstruct_many(traj, d, times, g, 3);
  for (std::size_t s = 0; s < times.size(); ++s) {
    EXPECT_EQ(many[s].values, reconstruct(traj, d, times[s], g, 1).values);
    EXPECT_EQ(many[s].values, reconstruct(traj, d, times[s], g, 5).values);
  }
}

TEST(Reconstruct, DuhamelPartIsTheNonlinearCorrection) {
  const auto d = gaussian(1.0);
  const auto traj = solve_charge(d, config(1e-3, 0.4));
  const SpatialGrid g(1.0, 0.5);
  const auto snap = reconstruct(traj, d, 0.4, g);
  const std::size_t k = traj.grid.index_of(0.4);
  const std::size_t steps[] = {k};
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.x(i);
    const cplx duh = duhamel_at(traj, x, steps)[0];
    EXPECT_LE(std::abs(snap.values[i] - free_evolution(d, x, 0.4) - duh), 1e-15);
  }
}

TEST(Reconstruct, RejectsTimesBeyondTrajectory) {
  const auto d = gaussian(1.6);
  const auto traj = solve_charge(d, config(1e-3, 1.0));
  ASSERT_FALSE(traj.completed());
  const SpatialGrid g(2.0, 0.5);
  EXPECT_THROW(reconstruct(traj, d, 0.5, g), std::out_of_range);
  EXPECT_NO_THROW(reconstruct(traj, d, traj.last_time(), g));
  const auto ok = solve_charge(gaussian(0.5), config(1e-2, 1.0));
  EXPECT_THROW(reconstruct(ok, gaussian(0.5), 1.5, g), std::out_of_range);
  EXPECT_THROW(reconstruct(ok, gaussian(0.5), 0.505, g), std::out_of_range);
}

TEST(JumpDefect, GroundStateSecondOrder) {
  double prev = 0.0;
  for (int r = 0; r < 4; ++r) {
    const double dx = 0.1 / static_cast<double>(1 << r);
    const double def = jump_defect(sample(SpatialGrid::from_nodes(60u << r, dx), phi0), 5.0);
    if (r > 0) {
      EXPECT_NEAR(std::log2(prev / def), 2.0, 0.1);
    }
    prev = def;
  }
  EXPECT_LT(prev, 2e-4);
}

TEST(JumpDefect, SmoothFieldReportsTheJumpTerm) {
  const auto s = sample(SpatialGrid(5.0, 1.0 / 64.0), [](double x) { return 0.8 * std::exp(-x * x); });
  EXPECT_NEAR(jump_defect(s, 5.0), std::pow(0.8, 5.0), 1e-3);
}

TEST(JumpDefect, ZeroField) {
  const auto s = sample(SpatialGrid(1.0, 0.1), [](double) { return 0.0; });
  EXPECT_EQ(jump_defect(s, 5.0), 0.0);
  EXPECT_THROW(jump_defect(sample(SpatialGrid(0.2, 0.1), [](double) { return 0.0; }), 5.0), std::invalid_argument);
}

TEST(JumpDefect, NonlinearRunImprovesUnderRefinement) {
  const auto d = gaussian(1.0);
  double prev = INFINITY;
  for (int r = 0; r < 3; ++r) {
    const double dt = 2e-3 / static_cast<double>(1 << (2 * r));
    const double dx = 1.0 / static_cast<double>(16 << r);
    const auto traj = solve_charge(d, config(dt, 0.25));
    ASSERT_TRUE(traj.completed());
    const auto snap = reconstruct(traj, d, 0.25, SpatialGrid::from_nodes(8, dx));
    const double def = jump_defect(snap, 5.0, traj.q.back());
    EXPECT_LT(def, prev);
    prev = def;
  }
}

TEST(SobolevH1, GroundStateNorms) {
  double prev_m = 0.0, prev_g = 0.0;
  for (int r = 0; r < 3; ++r) {
    const double dx = 1.0 / static_cast<double>(16 << r);
    const auto n = sobolev_h1(sample(SpatialGrid(30.0, dx), phi0));
    const double em = std::abs(n.mass - std::sqrt(2.0)), eg = std::abs(n.grad_sq - std::sqrt(2.0));
    if (r > 0) {
      EXPECT_GT(std::log2(prev_m / em), 1.0);
      EXPECT_GT(std::log2(prev_g / eg), 1.0);
    }
    prev_m = em;
    prev_g = eg;
    EXPECT_DOUBLE_EQ(n.h1, std::sqrt(n.mass + n.grad_sq));
  }
  EXPECT_LT(prev_m, 1e-3);
  EXPECT_LT(prev_g, 1e-3);
}

TEST(SobolevH1, GaussianAndZero) {
  const auto n = sobolev_h1(sample(SpatialGrid(10.0, 1.0 / 64.0), [](double x) { return std::exp(-x * x); }));
  EXPECT_NEAR(n.mass, std::sqrt(pi / 2.0), 1e-10);
  EXPECT_NEAR(n.mass, 1.25331, 1e-5);
  EXPECT_NEAR(n.grad_sq, std::sqrt(pi / 2.0), 1e-3);
  const auto z = sobolev_h1(sample(SpatialGrid(1.0, 0.1), [](double) { return 0.0; }));
  EXPECT_EQ(z.mass, 0.0);
  EXPECT_EQ(z.grad_sq, 0.0);
  EXPECT_EQ(z.h1, 0.0);
}

TEST(BoundaryOutflow, ClosesTheLinearMassBudget) {
  const auto d = gaussian(1.0);
  const auto traj = solve_charge(d, config(1e-2, 3.0, false));
  const double L = 4.0;
  const auto out = boundary_outflow(traj, d, L, 1.0 / 64.0, 1, 2);
  const auto snap = reconstruct(traj, d, 3.0, SpatialGrid(L, 1.0 / 64.0));
  const double inside = trapezoid_norm_sq(snap.values, snap.dx());
  EXPECT_GT(out.mass_at(3.0), 0.05);
  EXPECT_NEAR(inside + out.mass_at(3.0), std::sqrt(pi / 2.0), 1e-4);
  EXPECT_EQ(out.mass_at(0.0), 0.0);
  EXPECT_THROW(boundary_outflow(traj, d, 0.01, 0.01), std::invalid_argument);
}
