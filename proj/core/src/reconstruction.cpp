#include "pointnls/reconstruction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "pointnls/free_propagator.hpp"
#include "pointnls/parallel.hpp"
#include "pointnls/schrodinger_kernel.hpp"

namespace pointnls {
namespace {

const cplx kCoupling = cplx(0.0, 1.0) * forward_prefactor;

std::size_t checked_index(const ChargeTrajectory& traj, double t) {
  const std::size_t k = traj.grid.index_of(t);
  if (k > traj.last_index()) {
    if (std::holds_alternative<BlowUp>(traj.status))
      throw std::out_of_range("reconstruct: t lies beyond the blow-up truncation of the trajectory");
    throw std::out_of_range("reconstruct: t lies beyond the accepted steps of the trajectory");
  }
  return k;
}

}  // namespace

std::vector<cplx> duhamel_at(const ChargeTrajectory& traj, double x, std::span<const std::size_t> steps) {
  std::vector<cplx> out(steps.size(), 0.0);
  if (steps.empty() || !traj.nonlinear) return out;
  const std::size_t kmax = *std::max_element(steps.begin(), steps.end());
  if (kmax > traj.last_index()) throw std::out_of_range("duhamel_at: step beyond the trajectory");
  if (kmax == 0) return out;
  const std::vector<cplx> N = traj.nonlinearity();
  const ChirpWeights cw(x, traj.grid.dt(), kmax);
  for (std::size_t i = 0; i < steps.size(); ++i)
    if (steps[i] > 0) out[i] = kCoupling * cw.convolve(N, steps[i]);
  return out;
}

std::vector<FieldSnapshot> reconstruct_many(const ChargeTrajectory& traj, const InitialDatum& datum,
                                            std::span<const double> times, const SpatialGrid& grid,
                                            unsigned threads) {
  std::vector<std::size_t> steps(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) steps[i] = checked_index(traj, times[i]);
  std::vector<FieldSnapshot> snaps;
  snaps.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i)
    snaps.push_back(FieldSnapshot{grid, std::vector<cplx>(grid.size()), traj.grid.node(steps[i])});

  const std::size_t o = grid.origin();
  const double t0 = traj.grid.t0();
  // The Duhamel term depends on |x| only: one kernel table per nonnegative node.
  parallel_for(o + 1, threads, [&](std::size_t j) {
    const double x = grid.x(o + j);
    const std::vector<cplx> d = duhamel_at(traj, x, steps);
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const double s = snaps[i].t - t0;
      snaps[i].values[o + j] = free_evolution(datum, x, s) + d[i];
      if (j > 0) snaps[i].values[o - j] = free_evolution(datum, -x, s) + d[i];
    }
  });
  return snaps;
}

FieldSnapshot reconstruct(const ChargeTrajectory& traj, const InitialDatum& datum, double t, const SpatialGrid& grid,
                          unsigned threads) {
  const double times[] = {t};
  return std::move(reconstruct_many(traj, datum, times, grid, threads).front());
}

namespace {
double interp(const std::vector<double>& t, const std::vector<double>& v, double time) {
  if (t.empty()) return 0.0;
  if (time <= t.front()) return v.front();
  if (time >= t.back()) return v.back();
  const auto it = std::upper_bound(t.begin(), t.end(), time);
  const std::size_t i = static_cast<std::size_t>(it - t.begin());
  const double f = (time - t[i - 1]) / (t[i] - t[i - 1]);
  return (1.0 - f) * v[i - 1] + f * v[i];
}
}  // namespace

double BoundaryOutflow::mass_at(double time) const { return interp(t, mass, time); }
double BoundaryOutflow::energy_at(double time) const { return interp(t, energy, time); }

BoundaryOutflow boundary_outflow(const ChargeTrajectory& traj, const InitialDatum& datum, double L, double probe_h,
                                 std::size_t stride, unsigned threads) {
  if (!(L > 2.0 * probe_h) || !(probe_h > 0.0)) throw std::invalid_argument("boundary_outflow: need L > 2 probe_h > 0");
  if (stride == 0) throw std::invalid_argument("boundary_outflow: stride must be positive");
  std::vector<std::size_t> steps;
  for (std::size_t k = 0; k <= traj.last_index(); k += stride) steps.push_back(k);
  if (steps.back() != traj.last_index()) steps.push_back(traj.last_index());

  // 10 probes: offsets -2..2 around x = -L and x = +L; Duhamel part is shared between +-x.
  constexpr std::array<int, 5> offs{-2, -1, 0, 1, 2};
  std::array<std::vector<cplx>, 5> duh;  // at |x| = L + off*h (offset measured outward)
  parallel_for(5, threads, [&](std::size_t i) { duh[i] = duhamel_at(traj, L + offs[i] * probe_h, steps); });

  const double t0 = traj.grid.t0();
  std::vector<double> mflux(steps.size()), eflux(steps.size());
  for (std::size_t s = 0; s < steps.size(); ++s) {
    const double tt = traj.grid.node(steps[s]) - t0;
    double mf = 0.0, ef = 0.0;
    for (int side : {1, -1}) {
      std::array<cplx, 5> f;  // f[i] at x = side * (L + offs[i] h), ordered by increasing x when side = +1
      for (std::size_t i = 0; i < 5; ++i) f[i] = free_evolution(datum, side * (L + offs[i] * probe_h), tt) + duh[i][s];
      // derivatives along the outward direction
      const cplx d1 = (-f[4] + 8.0 * f[3] - 8.0 * f[1] + f[0]) / (12.0 * probe_h);
      const cplx d2 = (-f[4] + 16.0 * f[3] - 30.0 * f[2] + 16.0 * f[1] - f[0]) / (12.0 * probe_h * probe_h);
      // outward derivative = side * d/dx; both fluxes are odd in the derivative count
      mf += 2.0 * std::imag(std::conj(f[2]) * d1);
      ef += std::imag(std::conj(d1) * d2);
    }
    mflux[s] = mf;
    eflux[s] = ef;
  }
  BoundaryOutflow out;
  out.L = L;
  out.t.resize(steps.size());
  out.mass.assign(steps.size(), 0.0);
  out.energy.assign(steps.size(), 0.0);
  for (std::size_t s = 0; s < steps.size(); ++s) out.t[s] = traj.grid.node(steps[s]);
  for (std::size_t s = 1; s < steps.size(); ++s) {
    const double h = out.t[s] - out.t[s - 1];
    out.mass[s] = out.mass[s - 1] + 0.5 * h * (mflux[s] + mflux[s - 1]);
    out.energy[s] = out.energy[s - 1] + 0.5 * h * (eflux[s] + eflux[s - 1]);
  }
  return out;
}

}  // namespace pointnls
