#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "pointnls/charge_solver.hpp"
#include "pointnls/free_propagator.hpp"
#include "pointnls/reconstruction.hpp"
#include "pointnls/scattering.hpp"

using namespace pointnls;

namespace {
const InitialDatum kHalf = InitialDatum::gaussian({0.5, 1.0, 0.0, 0.0});

ChargeTrajectory run(const InitialDatum& d, double dt, double T, bool nonlinear = true) {
  SolverConfig cfg;
  cfg.dt = dt;
  cfg.T = T;
  cfg.nonlinear = nonlinear;
  return solve_charge(d, cfg);
}
}  // namespace

TEST(LqTail, ConstantChargeAndMonotone) {
  ChargeTrajectory t = run(kHalf, 0.05, 5.0);
  for (auto& q : t.q) q = cplx(0.0, 2.0);
  const auto tail = lq_tail(t, 4.0);
  for (std::size_t k = 0; k < tail.size(); ++k)
    EXPECT_NEAR(tail[k], 2.0 * std::pow(5.0 - t.grid.node(k), 0.25), 1e-12) << k;
  EXPECT_THROW(lq_tail(t, 0.5), std::invalid_argument);

  const auto real = lq_tail(run(kHalf, 0.02, 10.0), 8.0);
  EXPECT_EQ(real.back(), 0.0);
  for (std::size_t k = 1; k < real.size(); ++k) EXPECT_LE(real[k], real[k - 1]);
}

TEST(ScatteringState, ZeroAndLinear) {
  const SpatialGrid g(10.0, 1.0 / 8.0);
  const auto z = scattering_state(run(InitialDatum::zero(), 0.05, 5.0), InitialDatum::zero(), g);
  for (const cplx v : z.values) EXPECT_EQ(v, 0.0);

  const auto lin = scattering_state(run(kHalf, 0.05, 5.0, false), kHalf, g);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(lin.values[i], kHalf.value(g.x(i)));

  SolverConfig shifted;
  shifted.t0 = 1.0;
  shifted.T = 1.0;
  shifted.dt = 0.05;
  EXPECT_THROW(scattering_state(solve_charge(kHalf, shifted), kHalf, g), std::invalid_argument);
}

TEST(DuhamelTail, SplitsTheReconstructedField) {
  // psi(T) = e^{iT d^2} psi^+ + tail(T), with psi^+ truncated at T_max.
  const auto traj = run(kHalf, 0.01, 10.0);
  ASSERT_TRUE(traj.completed());
  const SpatialGrid g(40.0, 1.0 / 16.0);
  const auto plus = scattering_state(traj, kHalf, g);
  const auto plus_datum = InitialDatum::sampled(g, plus.values);
  const double T = 2.0;
  const SpatialGrid probe(3.0, 0.5);
  const auto psi = reconstruct(traj, kHalf, T, probe);
  const auto tail = duhamel_tail(traj, T, probe);
  for (std::size_t i = 0; i < probe.size(); ++i) {
    const cplx lhs = psi.values[i] - tail.values[i];
    EXPECT_NEAR(std::abs(lhs - free_evolution(plus_datum, probe.x(i), T)), 0.0, 1e-3) << probe.x(i);
  }
  const auto end = duhamel_tail(traj, traj.last_time(), probe);
  for (const cplx v : end.values) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(duhamel_tail(traj, 20.0, probe), std::out_of_range);
}

TEST(ScatteringStateAtOrigin, MatchesTheFullStateAfterRestart) {
  // Restarting from psi(T) and integrating to the same horizon gives the same psi^+(0).
  const auto traj = run(kHalf, 0.01, 10.0);
  const SpatialGrid g(40.0, 1.0 / 16.0);
  const cplx full = scattering_state(traj, kHalf, g).values[g.origin()];
  const double T = 2.0;
  const auto psi_T = InitialDatum::sampled(g, reconstruct(traj, kHalf, T, g).values);
  SolverConfig cfg;
  cfg.dt = 0.01;
  cfg.t0 = T;
  cfg.T = 8.0;
  const auto rest = solve_charge(psi_T, cfg);
  ASSERT_TRUE(rest.completed());
  EXPECT_NEAR(std::abs(scattering_state_at_origin(rest, psi_T) - full), 0.0, 5e-3);
  EXPECT_THROW(scattering_state_at_origin(traj, kHalf), std::invalid_argument);
}

TEST(FitDecay, LinearGaussianRate) {
  // |q(t)| = (1 + 16 t^2)^{-1/4}
  const auto f = fit_decay(run(kHalf, 0.02, 20.0, false));
  EXPECT_NEAR(f.exponent, 0.5, 5e-3);
  EXPECT_NEAR(f.prefactor, 0.5 * 0.5, 5e-3);
  EXPECT_DOUBLE_EQ(f.t_to, 20.0);
  EXPECT_DOUBLE_EQ(f.t_from, 2.0);
  EXPECT_GE(f.samples, 900u);
  EXPECT_THROW(fit_decay(run(kHalf, 0.1, 2.0, false)), std::invalid_argument);
}

TEST(Diagnostics, SubthresholdGaussian) {
  const auto traj = run(kHalf, 0.02, 20.0);
  ASSERT_TRUE(traj.completed());
  ScatteringConfig cfg;
  cfg.residual_times = {5.0, 10.0, 15.0};
  const auto d = scattering_diagnostics(traj, kHalf, cfg);
  EXPECT_DOUBLE_EQ(d.lq_exponent, 8.0);
  EXPECT_NEAR(d.decay.exponent, 0.5, 0.1);
  ASSERT_EQ(d.h1_residual.size(), 3u);
  EXPECT_GT(d.h1_residual[0].second, d.h1_residual[1].second);
  EXPECT_GT(d.h1_residual[1].second, d.h1_residual[2].second);
  for (std::size_t k = 1; k < d.lq_tail.size(); ++k) EXPECT_LE(d.lq_tail[k], d.lq_tail[k - 1]);

  const auto zero = scattering_diagnostics(run(InitialDatum::zero(), 0.05, 20.0), InitialDatum::zero(), cfg);
  for (const auto& [T, r] : zero.h1_residual) EXPECT_EQ(r, 0.0);
  for (const cplx v : zero.psi_plus.values) EXPECT_EQ(v, 0.0);

  const auto blow = run(InitialDatum::gaussian({1.6, 1.0, 0.0, 0.0}), 1e-3, 0.5);
  ASSERT_FALSE(blow.completed());
  EXPECT_THROW(scattering_diagnostics(blow, kHalf, cfg), std::invalid_argument);
}
