#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pointnls/abel.hpp"
#include "pointnls/free_propagator.hpp"
#include "pointnls/initial_datum.hpp"
#include "pointnls/time_grid.hpp"

namespace pointnls {

struct SolverConfig {
  double p = 5.0;
  double dt = 1e-3;
  double T = 1.0;
  double t0 = 0.0;             // label of the first node; the drive is evaluated at t - t0
  double fp_tol = 1e-12;       // relative Newton step tolerance
  int fp_max_iters = 50;
  double blowup_amp = 1e6;
  double blowup_growth = 10.0;  // per-step |q_k| / |q_{k-1}| ceiling
  bool nonlinear = true;        // false: q is the free drive

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

struct Completed {};
struct BlowUp {
  double t_detect;  // first rejected node; the blow-up is placed in [t_lower, t_detect]
  double t_lower;
  std::string criterion;
};
struct Stalled {
  std::size_t step;
  std::string reason;
};
using SolverStatus = std::variant<Completed, BlowUp, Stalled>;

std::string status_name(const SolverStatus& status);

struct ChargeTrajectory {
  TimeGrid grid;
  std::vector<cplx> q;  // q[k] at grid.node(k) for the accepted steps
  SolverStatus status;
  double p = 5.0;
  bool nonlinear = true;
  int max_newton_iters = 0;  // worst step

  bool completed() const { return std::holds_alternative<Completed>(status); }
  std::size_t last_index() const { return q.size() - 1; }
  double last_time() const { return grid.node(last_index()); }
  /// |q|^{p-1} q on the accepted steps (zeros when the nonlinearity is off).
  std::vector<cplx> nonlinearity() const;
};

/// |z|^{p-1} z.
cplx power_nonlinearity(cplx z, double p);

/// Marches q_k = d_k + i/sqrt(4 pi i) sum_j w[k][j] |q_j|^{p-1} q_j.
/// Each step: frozen-history predictor, then Newton on the implicit last-panel term.
/// A Newton failure while |q| grows, or hitting the amplitude/growth ceilings, is BlowUp;
/// any other failure is Stalled.
ChargeTrajectory solve_charge(const InitialDatum& datum, const SolverConfig& cfg);
ChargeTrajectory solve_charge(const OriginDrive& drive, const SolverConfig& cfg);

/// max_k |q_k - d_k - i/sqrt(4 pi i) sum_j w[k][j] |q_j|^{p-1} q_j| over the given series.
double charge_residual(std::span<const cplx> q, std::span<const cplx> drive, const AbelWeights& weights, double p);

struct ConvergenceOrder {
  enum class Kind { Observed, Exact, NotApplicable };
  Kind kind = Kind::NotApplicable;
  double order = 0.0;        // +inf for Exact
  double diff_coarse = 0.0;  // |q_dt - q_{dt/2}|
  double diff_fine = 0.0;    // |q_{dt/2} - q_{dt/4}|
};

/// log2(|q_dt - q_{dt/2}| / |q_{dt/2} - q_{dt/4}|) at t_probe (runs end at t_probe).
/// Identically zero solutions are NotApplicable; bitwise-equal runs are Exact.
/// Throws std::runtime_error if a run does not complete.
ConvergenceOrder richardson_order(const InitialDatum& datum, const SolverConfig& cfg, double t_probe);

}  // namespace pointnls
