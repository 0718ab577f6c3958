#include "pointnls/charge_solver.hpp"

#include <cfloat>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pointnls {
namespace {

const cplx kCoupling = cplx(0.0, 1.0) * forward_prefactor;

struct NewtonResult {
  cplx z;
  bool converged;
  int iters;
};

// Determinant of the real 2x2 Jacobian of z - b - kappa |z|^{p-1} z; equals 1 at z = 0 and
// vanishes at the fold.
double jacobian_det(cplx kappa, cplx z, double p) {
  const double r = std::abs(z);
  const double rp = std::pow(r, p - 1.0);
  return std::norm(1.0 - kappa * (0.5 * (p + 1.0) * rp)) - std::norm(kappa * (0.5 * (p - 1.0) * rp));
}

// Solves z - b - kappa |z|^{p-1} z = 0 from z0 (Wirtinger-Newton, 2x2 real system).
NewtonResult newton(cplx b, cplx kappa, cplx z0, double p, double tol, int max_iters) {
  cplx z = z0;
  for (int it = 1; it <= max_iters; ++it) {
    const double r = std::abs(z);
    const double rp = std::pow(r, p - 1.0);
    const cplx F = z - b - kappa * rp * z;
    const cplx gz = 0.5 * (p + 1.0) * rp;
    const cplx phase2 = r > 0.0 ? (z / r) * (z / r) : cplx(0.0);
    const cplx gzb = 0.5 * (p - 1.0) * rp * phase2;
    const cplx alpha = 1.0 - kappa * gz;
    const cplx beta = -kappa * gzb;
    const double det = std::norm(alpha) - std::norm(beta);
    if (!(std::abs(det) > 1e-14) || !std::isfinite(det)) return {z, false, it};
    const cplx delta = (-F * std::conj(alpha) + beta * std::conj(F)) / det;
    z += delta;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return {z, false, it};
    if (std::abs(delta) <= tol * std::max(std::abs(z), DBL_MIN)) return {z, true, it};
  }
  return {z, false, max_iters};
}

}  // namespace

void SolverConfig::validate() const {
  if (!(p > 1.0)) throw std::invalid_argument("SolverConfig: p must exceed 1");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("SolverConfig: dt must be positive");
  if (!(T >= dt)) throw std::invalid_argument("SolverConfig: T must be at least dt");
  if (!(fp_tol > 0.0)) throw std::invalid_argument("SolverConfig: fp_tol must be positive");
  if (fp_max_iters < 1) throw std::invalid_argument("SolverConfig: fp_max_iters must be positive");
  if (!(blowup_amp > 0.0)) throw std::invalid_argument("SolverConfig: blowup_amp must be positive");
  if (!(blowup_growth > 1.0)) throw std::invalid_argument("SolverConfig: blowup_growth must exceed 1");
}

std::string status_name(const SolverStatus& status) {
  if (std::holds_alternative<Completed>(status)) return "Completed";
  if (std::holds_alternative<BlowUp>(status)) return "BlowUp";
  return "Stalled";
}

cplx power_nonlinearity(cplx z, double p) { return std::pow(std::abs(z), p - 1.0) * z; }

std::vector<cplx> ChargeTrajectory::nonlinearity() const {
  std::vector<cplx> n(q.size(), 0.0);
  if (!nonlinear) return n;
  for (std::size_t k = 0; k < q.size(); ++k) n[k] = power_nonlinearity(q[k], p);
  return n;
}

ChargeTrajectory solve_charge(const InitialDatum& datum, const SolverConfig& cfg) {
  cfg.validate();
  const TimeGrid local = TimeGrid::covering(0.0, cfg.dt, cfg.T);
  OriginDrive drive = propagate_at_origin(datum, local);
  drive.grid = TimeGrid(cfg.t0, cfg.dt, local.n_steps());
  return solve_charge(drive, cfg);
}

ChargeTrajectory solve_charge(const OriginDrive& drive, const SolverConfig& cfg) {
  cfg.validate();
  const TimeGrid& grid = drive.grid;
  if (drive.values.size() != grid.size()) throw std::invalid_argument("solve_charge: drive does not match its grid");
  ChargeTrajectory traj{grid, {}, Completed{}, cfg.p, cfg.nonlinear, 0};
  const std::size_t n = grid.n_steps();
  traj.q.reserve(n + 1);
  if (!cfg.nonlinear) {
    traj.q = drive.values;
    return traj;
  }

  const AbelWeights weights(grid);
  const cplx kappa = kCoupling * weights.diagonal();
  std::vector<cplx> N;
  N.reserve(n + 1);
  traj.q.push_back(drive.values[0]);
  N.push_back(power_nonlinearity(drive.values[0], cfg.p));

  for (std::size_t k = 1; k <= n; ++k) {
    const cplx b = drive.values[k] + kCoupling * weights.history(N, k);
    const cplx prev = traj.q.back();
    const cplx predictor = b + kappa * N.back();
    const NewtonResult nr = newton(b, kappa, predictor, cfg.p, cfg.fp_tol, cfg.fp_max_iters);
    traj.max_newton_iters = std::max(traj.max_newton_iters, nr.iters);
    const double t = grid.node(k);
    const double t_lower = grid.node(k - 1);
    if (!nr.converged) {
      // Near the fold of z - b - kappa |z|^{p-1} z the last-panel equation loses its root;
      // a failure there with growing amplitude is blow-up, anything else is a dt problem.
      const double trial = std::isfinite(std::abs(nr.z)) ? std::abs(nr.z) : INFINITY;
      const double growing = std::max(trial, std::abs(predictor));
      const double stiffness = std::abs(kappa) * cfg.p * std::pow(std::max(growing, std::abs(prev)), cfg.p - 1.0);
      if (growing > std::abs(prev) && stiffness >= 0.5)
        traj.status = BlowUp{t, t_lower, "corrector divergence with growing amplitude"};
      else
        traj.status = Stalled{k, "corrector did not converge; reduce dt"};
      return traj;
    }
    const double mag = std::abs(nr.z);
    // A root past the fold is not the continuation of the small-amplitude branch.
    if (jacobian_det(kappa, nr.z, cfg.p) <= 0.0) {
      traj.status = BlowUp{t, t_lower, "root beyond the fold of the last-panel equation"};
      return traj;
    }
    // Growth faster than the step resolves: the nonlinear time scale |kappa| p |q|^{p-1} has
    // dropped below dt on the way up.
    if (mag > std::abs(prev) && std::abs(kappa) * cfg.p * std::pow(mag, cfg.p - 1.0) >= 1.0) {
      traj.status = BlowUp{t, t_lower, "growth unresolved by the step"};
      return traj;
    }
    if (mag > cfg.blowup_amp) {
      traj.status = BlowUp{t, t_lower, "amplitude ceiling"};
      return traj;
    }
    if (std::abs(prev) > 0.0 && mag > cfg.blowup_growth * std::abs(prev) && mag > 1.0) {
      traj.status = BlowUp{t, t_lower, "per-step growth ceiling"};
      return traj;
    }
    traj.q.push_back(nr.z);
    N.push_back(power_nonlinearity(nr.z, cfg.p));
  }
  return traj;
}

double charge_residual(std::span<const cplx> q, std::span<const cplx> drive, const AbelWeights& weights, double p) {
  if (q.size() != drive.size()) throw std::invalid_argument("charge_residual: size mismatch");
  if (q.empty()) return 0.0;
  std::vector<cplx> N(q.size());
  for (std::size_t k = 0; k < q.size(); ++k) N[k] = power_nonlinearity(q[k], p);
  double worst = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k)
    worst = std::max(worst, std::abs(q[k] - drive[k] - kCoupling * weights.apply(N, k)));
  return worst;
}

ConvergenceOrder richardson_order(const InitialDatum& datum, const SolverConfig& cfg, double t_probe) {
  if (!(t_probe > 0.0)) throw std::invalid_argument("richardson_order: t_probe must be positive");
  cplx vals[3];
  double dt = cfg.dt;
  for (int r = 0; r < 3; ++r, dt *= 0.5) {
    SolverConfig c = cfg;
    c.dt = dt;
    c.T = t_probe;
    c.t0 = 0.0;
    const ChargeTrajectory traj = solve_charge(datum, c);
    if (!traj.completed())
      throw std::runtime_error("richardson_order: run at dt = " + std::to_string(dt) + " ended with " +
                               status_name(traj.status));
    vals[r] = traj.q[traj.grid.index_of(t_probe)];
  }
  ConvergenceOrder out;
  out.diff_coarse = std::abs(vals[0] - vals[1]);
  out.diff_fine = std::abs(vals[1] - vals[2]);
  if (vals[0] == 0.0 && vals[1] == 0.0 && vals[2] == 0.0) return out;
  if (out.diff_fine == 0.0) {
    out.kind = ConvergenceOrder::Kind::Exact;
    out.order = std::numeric_limits<double>::infinity();
    return out;
  }
  out.kind = ConvergenceOrder::Kind::Observed;
  out.order = std::log2(out.diff_coarse / out.diff_fine);
  return out;
}

}  // namespace pointnls
