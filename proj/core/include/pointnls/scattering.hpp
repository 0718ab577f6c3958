#pragma once

#include <span>
#include <utility>
#include <vector>

#include "pointnls/charge_solver.hpp"
#include "pointnls/field.hpp"
#include "pointnls/initial_datum.hpp"

namespace pointnls {

/// ||q||_{L^r(t_k, T_max)} for every accepted node (trapezoid rule, accumulated from the end).
std::vector<double> lq_tail(const ChargeTrajectory& traj, double r);

/// psi^+(x) = psi_0(x) + i int_{t0}^{T_max} [e^{-is d^2} delta](x) N(s) ds, truncated at the last
/// accepted node. Requires traj.grid.t0() = 0.
FieldSnapshot scattering_state(const ChargeTrajectory& traj, const InitialDatum& datum, const SpatialGrid& grid,
                               unsigned threads = 1);

/// psi^+(0) for a trajectory whose grid starts at T = t0 >= 0 with state `state_at_t0`:
/// [e^{-iT d^2} psi(T)](0) + i int_T^{T_max} e^{i pi/4} / sqrt(4 pi s) N(s) ds (trapezoid; T > 0).
cplx scattering_state_at_origin(const ChargeTrajectory& traj, const InitialDatum& state_at_t0);

/// -i int_T^{T_max} e^{i(T - s) d^2} delta N(s) ds on the grid, i.e. psi(T) - e^{iT d^2} psi^+
/// with psi^+ truncated at T_max. T must be an accepted node.
FieldSnapshot duhamel_tail(const ChargeTrajectory& traj, double T, const SpatialGrid& grid, unsigned threads = 1);

struct DecayFit {
  double exponent;   // alpha in |q| ~ c t^{-alpha}
  double prefactor;  // c
  double t_from;
  double t_to;
  std::size_t samples;
};

/// Least squares of log|q| against log t over [t_to / 10, t_to], t_to = last accepted node.
/// Throws std::invalid_argument with the minimum horizon when fewer than min_samples fall in the window.
DecayFit fit_decay(const ChargeTrajectory& traj, std::size_t min_samples = 30);

struct ScatteringConfig {
  SpatialGrid grid = SpatialGrid(40.0, 1.0 / 16.0);
  std::vector<double> residual_times;  // T values for h1_residual
  double lq_exponent = 0.0;            // 0: use q = 2(p-1)
  std::size_t min_fit_samples = 30;
  unsigned threads = 1;
};

struct ScatteringDiagnostics {
  double t_max;
  double lq_exponent;
  std::vector<double> lq_tail;
  FieldSnapshot psi_plus;
  std::vector<std::pair<double, double>> h1_residual;  // (T, ||psi(T) - e^{iT d^2} psi^+||_{H1})
  DecayFit decay;
};

/// Requires a Completed trajectory starting at t = 0.
ScatteringDiagnostics scattering_diagnostics(const ChargeTrajectory& traj, const InitialDatum& datum,
                                             const ScatteringConfig& cfg);

}  // namespace pointnls
