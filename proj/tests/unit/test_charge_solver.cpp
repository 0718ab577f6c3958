#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "pointnls/charge_solver.hpp"

using namespace pointnls;

namespace {
SolverConfig config(double dt, double T, double p = 5.0) {
  SolverConfig c;
  c.p = p;
  c.dt = dt;
  c.T = T;
  return c;
}
InitialDatum gaussian(double A) { return InitialDatum::gaussian({A, 1.0, 0.0, 0.0}); }
const double kGroundAmp = std::pow(2.0, 0.25);

double ground_state_deviation(double dt, double T) {
  const auto traj = solve_charge(InitialDatum::ground_state(5.0), config(dt, T));
  double dev = 0.0;
  for (std::size_t k = 0; k < traj.q.size(); ++k) {
    const double t = traj.grid.node(k);
    dev = std::max(dev, std::abs(traj.q[k] - kGroundAmp * std::polar(1.0, t)));
  }
  return dev;
}
}  // namespace

TEST(SolverConfig, Validation) {
  EXPECT_NO_THROW(SolverConfig{}.validate());
  auto bad = [](auto mutate) {
    SolverConfig c;
    mutate(c);
    return c;
  };
  EXPECT_THROW(bad([](SolverConfig& c) { c.p = 1.0; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](SolverConfig& c) { c.dt = 0.0; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](SolverConfig& c) { c.dt = -1e-3; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](SolverConfig& c) { c.fp_tol = 0.0; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](SolverConfig& c) { c.fp_max_iters = 0; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](SolverConfig& c) { c.blowup_amp = -1.0; }).validate(), std::invalid_argument);
  EXPECT_THROW(bad([](SolverConfig& c) { c.blowup_growth = 1.0; }).validate(), std::invalid_argument);
  EXPECT_THROW(solve_charge(gaussian(1.0), bad([](SolverConfig& c) { c.T = 0.0; })), std::invalid_argument);
}

TEST(SolveCharge, ZeroDatum) {
  const auto traj = solve_charge(InitialDatum::zero(), config(1e-2, 2.0));
  ASSERT_TRUE(traj.completed());
  EXPECT_EQ(traj.q.size(), traj.grid.size());
  for (const cplx& q : traj.q) EXPECT_EQ(q, 0.0);
}

TEST(SolveCharge, FirstValueIsDatum) {
  const auto d = InitialDatum::gaussian({0.9, 1.3, 0.2, 1.0}, cplx(0.0, 1.0));
  const auto traj = solve_charge(d, config(1e-3, 0.1));
  EXPECT_EQ(traj.q[0], d.origin_value());
}

TEST(SolveCharge, SatisfiesDiscreteEquation) {
  const auto d = gaussian(0.8);
  const auto traj = solve_charge(d, config(1e-3, 1.0));
  ASSERT_TRUE(traj.completed());
  const auto drive = propagate_at_origin(d, traj.grid);
  EXPECT_LT(charge_residual(traj.q, drive.values, AbelWeights(traj.grid), 5.0), 1e-12);
  // and a perturbed series does not
  auto q = traj.q;
  q[500] += 1e-6;
  EXPECT_GT(charge_residual(q, drive.values, AbelWeights(traj.grid), 5.0), 1e-7);
}

TEST(SolveCharge, StandingWaveShortHorizon) {
  // e^{it} phi_0 is linearly unstable (growth rate ~6.9), so the check stays on t <= 1.
  const double coarse = ground_state_deviation(2e-3, 1.0);
  const double fine = ground_state_deviation(1e-3, 1.0);
  EXPECT_LT(fine, 1e-3);
  EXPECT_GT(coarse / fine, 1.8);

  const auto traj = solve_charge(InitialDatum::ground_state(5.0), config(1e-3, 0.5));
  ASSERT_TRUE(traj.completed());
  for (std::size_t k = 0; k < traj.q.size(); k += 50) {
    EXPECT_NEAR(std::abs(traj.q[k]), kGroundAmp, 1e-5);
    EXPECT_NEAR(std::arg(traj.q[k] * std::polar(1.0, -traj.grid.node(k))), 0.0, 1e-5);
  }
}

TEST(SolveCharge, NegativeEnergyGaussianBlowsUp) {
  const auto d = gaussian(1.6);
  EXPECT_LT(d.energy(5.0), 0.0);
  const auto traj = solve_charge(d, config(1e-3, 1.0));
  ASSERT_TRUE(std::holds_alternative<BlowUp>(traj.status)) << status_name(traj.status);
  const auto& b = std::get<BlowUp>(traj.status);
  EXPECT_TRUE(std::isfinite(b.t_detect));
  EXPECT_GT(b.t_detect, 0.0);
  EXPECT_NEAR(b.t_detect - b.t_lower, 1e-3, 1e-12);
  EXPECT_LE(traj.last_time(), b.t_detect);
  EXPECT_FALSE(b.criterion.empty());
}

TEST(SolveCharge, BlowUpTimeGrowsWithCeilingAndConverges) {
  const auto d = gaussian(1.6);
  double prev = 0.0;
  for (double amp : {3.0, 10.0, 1e3, 1e6}) {
    SolverConfig c = config(1e-4, 0.1);
    c.blowup_amp = amp;
    const auto traj = solve_charge(d, c);
    ASSERT_TRUE(std::holds_alternative<BlowUp>(traj.status));
    const double t = std::get<BlowUp>(traj.status).t_detect;
    EXPECT_GE(t, prev);
    prev = t;
  }
  std::vector<double> times;
  for (double dt : {4e-4, 2e-4, 1e-4, 5e-5}) {
    const auto traj = solve_charge(d, config(dt, 0.1));
    times.push_back(std::get<BlowUp>(traj.status).t_detect);
  }
  const double d1 = std::abs(times[1] - times[0]), d2 = std::abs(times[3] - times[2]);
  EXPECT_LT(d2, d1 + 1e-12);
  EXPECT_LT(d2, 0.05 * times[3]);
}

TEST(SolveCharge, SubthresholdGaussianDecays) {
  const auto traj = solve_charge(gaussian(0.5), config(1e-2, 50.0));
  ASSERT_TRUE(traj.completed()) << status_name(traj.status);
  EXPECT_DOUBLE_EQ(traj.last_time(), 50.0);
  EXPECT_LT(std::abs(traj.q.back()), 0.2 * std::abs(traj.q[0]));
  // L^8 tail over (t, 50] shrinks.
  auto tail = [&](double from) {
    double s = 0.0;
    for (std::size_t k = traj.grid.index_of(from); k < traj.q.size(); ++k) s += std::pow(std::abs(traj.q[k]), 8.0);
    return std::pow(s * traj.grid.dt(), 1.0 / 8.0);
  };
  EXPECT_LT(tail(10.0), tail(1.0));
  EXPECT_LT(tail(40.0), tail(10.0));
  EXPECT_LT(tail(40.0), 0.1);
}

TEST(SolveCharge, LinearModeReturnsDrive) {
  SolverConfig c = config(1e-2, 3.0);
  c.nonlinear = false;
  const auto d = gaussian(1.6);
  const auto traj = solve_charge(d, c);
  ASSERT_TRUE(traj.completed());
  const auto drive = propagate_at_origin(d, traj.grid);
  EXPECT_EQ(traj.q, drive.values);
  for (const cplx& n : traj.nonlinearity()) EXPECT_EQ(n, 0.0);
}

TEST(SolveCharge, StalledWhenCorrectorCannotConverge) {
  SolverConfig c = config(1e-2, 1.0);
  c.fp_max_iters = 1;
  c.fp_tol = 1e-300;
  const auto traj = solve_charge(gaussian(0.5), c);
  ASSERT_TRUE(std::holds_alternative<Stalled>(traj.status)) << status_name(traj.status);
  const auto& s = std::get<Stalled>(traj.status);
  EXPECT_EQ(s.step, 1u);
  EXPECT_EQ(traj.q.size(), 1u);
  EXPECT_FALSE(s.reason.empty());
}

TEST(SolveCharge, TimeOffsetOnlyRelabels) {
  SolverConfig a = config(1e-3, 0.5), b = a;
  b.t0 = 3.0;
  const auto ta = solve_charge(gaussian(0.9), a), tb = solve_charge(gaussian(0.9), b);
  EXPECT_EQ(ta.q, tb.q);
  EXPECT_DOUBLE_EQ(tb.grid.t0(), 3.0);
}

TEST(Richardson, GroundStateOrder) {
  const auto r = richardson_order(InitialDatum::ground_state(5.0), config(4e-3, 1.0), 1.0);
  ASSERT_EQ(r.kind, ConvergenceOrder::Kind::Observed);
  EXPECT_GE(r.order, 1.4);
}

TEST(Richardson, NonlinearGaussianOrder) {
  const auto r = richardson_order(gaussian(0.8), config(4e-3, 1.0), 1.0);
  ASSERT_EQ(r.kind, ConvergenceOrder::Kind::Observed);
  EXPECT_GE(r.order, 1.4);
}

TEST(Richardson, LinearModeIsLimitedOnlyByDrive) {
  SolverConfig c = config(1e-2, 1.0);
  c.nonlinear = false;
  const auto r = richardson_order(gaussian(1.0), c, 1.0);
  EXPECT_NE(r.kind, ConvergenceOrder::Kind::NotApplicable);
  EXPECT_GE(r.order, 2.0);
}

TEST(Richardson, ZeroDatumIsNotApplicable) {
  const auto r = richardson_order(InitialDatum::zero(), config(1e-2, 1.0), 1.0);
  EXPECT_EQ(r.kind, ConvergenceOrder::Kind::NotApplicable);
}

TEST(Richardson, ThrowsOnBlowUp) {
  EXPECT_THROW(richardson_order(gaussian(1.6), config(1e-3, 1.0), 1.0), std::runtime_error);
}

TEST(Properties, GaugeEquivariance) {
  const auto d = InitialDatum::gaussian({0.9, 1.1, 0.3, 0.8});
  const auto base = solve_charge(d, config(1e-3, 1.0));
  for (double theta : {0.3, 1.7, -2.9}) {
    const auto rot = solve_charge(d.rotated(theta), config(1e-3, 1.0));
    ASSERT_EQ(rot.q.size(), base.q.size());
    for (std::size_t k = 0; k < base.q.size(); ++k)
      EXPECT_LE(std::abs(rot.q[k] - std::polar(1.0, theta) * base.q[k]), 1e-13 * std::max(1.0, std::abs(base.q[k])));
  }
}

TEST(Properties, ScalingCovariance) {
  // psi^lambda = lambda^{1/(p-1)} psi_0(lambda x) on dt / lambda^2 reproduces lambda^{1/(p-1)} q.
  const double p = 5.0;
  const auto d = gaussian(0.9);
  const auto base = solve_charge(d, config(4e-3, 1.0, p));
  for (double lambda : {2.0, 4.0}) {
    const auto s = solve_charge(d.scaled(lambda, p), config(4e-3 / (lambda * lambda), 1.0 / (lambda * lambda), p));
    ASSERT_EQ(s.q.size(), base.q.size());
    const double f = std::pow(lambda, 1.0 / (p - 1.0));
    for (std::size_t k = 0; k < base.q.size(); ++k) EXPECT_LE(std::abs(s.q[k] - f * base.q[k]), 1e-12);
  }
}

TEST(Properties, TimeReversalOfRealData) {
  // For real psi_0 the backward solution is conj(psi(t)): conj(q) must satisfy the charge
  // equation with the backward drive e^{-it d^2} psi_0 and the conjugate coupling.
  const auto d = gaussian(0.9);
  const auto traj = solve_charge(d, config(1e-3, 0.5));
  const AbelWeights w(traj.grid);
  const cplx coupling = std::conj(cplx(0.0, 1.0) * forward_prefactor);
  std::vector<cplx> n(traj.q.size());
  for (std::size_t k = 0; k < n.size(); ++k) n[k] = power_nonlinearity(std::conj(traj.q[k]), 5.0);
  for (std::size_t k = 0; k < n.size(); k += 37) {
    const cplx back = free_evolution(d, 0.0, -traj.grid.node(k)) + coupling * w.apply(n, k);
    EXPECT_LE(std::abs(std::conj(traj.q[k]) - back), 1e-12);
  }
}

TEST(Properties, Determinism) {
  const auto a = solve_charge(gaussian(1.2), config(1e-3, 1.0));
  const auto b = solve_charge(gaussian(1.2), config(1e-3, 1.0));
  EXPECT_EQ(a.q, b.q);
  EXPECT_EQ(status_name(a.status), status_name(b.status));
}
