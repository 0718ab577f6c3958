#pragma once

#include <span>
#include <vector>

#include "pointnls/charge_solver.hpp"
#include "pointnls/field.hpp"
#include "pointnls/initial_datum.hpp"

namespace pointnls {

/// psi(x, t) = [e^{i(t - t0) d^2} psi_0](x) + i [L_0 N](x, t) with N = |q|^{p-1} q.
/// t must be an accepted node of the trajectory.
FieldSnapshot reconstruct(const ChargeTrajectory& traj, const InitialDatum& datum, double t, const SpatialGrid& grid,
                          unsigned threads = 1);

/// Several snapshots sharing one kernel table per |x|.
std::vector<FieldSnapshot> reconstruct_many(const ChargeTrajectory& traj, const InitialDatum& datum,
                                            std::span<const double> times, const SpatialGrid& grid,
                                            unsigned threads = 1);

/// Duhamel part i [L_0 N](x, t_k) at the requested steps.
std::vector<cplx> duhamel_at(const ChargeTrajectory& traj, double x, std::span<const std::size_t> steps);

/// Cumulative flux of mass and kinetic energy out of [-L, L] since the first node.
/// Mass flux 2 Im(conj(psi) psi_x), energy flux Im(conj(psi_x) psi_xx), both from
/// 5-point stencils with spacing probe_h at x = +-L, integrated by the trapezoid rule
/// over every `stride`-th step.
struct BoundaryOutflow {
  double L = 0.0;
  std::vector<double> t;
  std::vector<double> mass;
  std::vector<double> energy;

  /// Linear interpolation in t.
  double mass_at(double time) const;
  double energy_at(double time) const;
};
BoundaryOutflow boundary_outflow(const ChargeTrajectory& traj, const InitialDatum& datum, double L, double probe_h,
                                 std::size_t stride = 1, unsigned threads = 1);

}  // namespace pointnls
