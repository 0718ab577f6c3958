#include "pointnls/scattering.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pointnls/free_propagator.hpp"
#include "pointnls/ground_state.hpp"
#include "pointnls/parallel.hpp"
#include "pointnls/schrodinger_kernel.hpp"

namespace pointnls {

std::vector<double> lq_tail(const ChargeTrajectory& traj, double r) {
  if (!(r >= 1.0)) throw std::invalid_argument("lq_tail: exponent must be at least 1");
  const std::size_t n = traj.q.size();
  std::vector<double> acc(n, 0.0);
  const double h = traj.grid.dt();
  for (std::size_t k = n - 1; k-- > 0;)
    acc[k] = acc[k + 1] + 0.5 * h * (std::pow(std::abs(traj.q[k]), r) + std::pow(std::abs(traj.q[k + 1]), r));
  for (auto& a : acc) a = std::pow(a, 1.0 / r);
  return acc;
}

FieldSnapshot scattering_state(const ChargeTrajectory& traj, const InitialDatum& datum, const SpatialGrid& grid,
                               unsigned threads) {
  if (traj.grid.t0() != 0.0) throw std::invalid_argument("scattering_state: trajectory must start at t = 0");
  FieldSnapshot out{grid, std::vector<cplx>(grid.size()), 0.0};
  const std::vector<cplx> N = traj.nonlinearity();
  const std::size_t n = traj.last_index();
  const std::size_t o = grid.origin();
  const cplx pref = cplx(0.0, 1.0) * backward_prefactor;
  parallel_for(o + 1, threads, [&](std::size_t j) {
    const double x = grid.x(o + j);
    cplx d = 0.0;
    if (traj.nonlinear && n > 0) d = pref * ChirpWeights(x, traj.grid.dt(), n).integrate_conj(N);
    out.values[o + j] = datum.value(x) + d;
    if (j > 0) out.values[o - j] = datum.value(-x) + d;
  });
  return out;
}

cplx scattering_state_at_origin(const ChargeTrajectory& traj, const InitialDatum& state_at_t0) {
  const double T = traj.grid.t0();
  if (!(T > 0.0)) throw std::invalid_argument("scattering_state_at_origin: trajectory must start at T > 0");
  cplx acc = 0.0;
  if (traj.nonlinear) {
    const std::vector<cplx> N = traj.nonlinearity();
    const double h = traj.grid.dt();
    for (std::size_t k = 0; k < N.size(); ++k) {
      const double c = (k == 0 || k + 1 == N.size()) ? 0.5 : 1.0;
      acc += c * h * N[k] / std::sqrt(traj.grid.node(k));
    }
  }
  return free_evolution(state_at_t0, 0.0, -T) + cplx(0.0, 1.0) * backward_prefactor * acc;
}

FieldSnapshot duhamel_tail(const ChargeTrajectory& traj, double T, const SpatialGrid& grid, unsigned threads) {
  const std::size_t k = traj.grid.index_of(T);
  if (k > traj.last_index()) throw std::out_of_range("duhamel_tail: T beyond the trajectory");
  FieldSnapshot out{grid, std::vector<cplx>(grid.size(), 0.0), T};
  const std::size_t n = traj.last_index();
  if (!traj.nonlinear || k == n) return out;
  const std::vector<cplx> N = traj.nonlinearity();
  const std::span<const cplx> window(N.data() + k, n - k + 1);
  const std::size_t o = grid.origin();
  const cplx pref = cplx(0.0, -1.0) * backward_prefactor;
  parallel_for(o + 1, threads, [&](std::size_t j) {
    const double x = grid.x(o + j);
    const cplx d = pref * ChirpWeights(x, traj.grid.dt(), n - k).integrate_conj(window);
    out.values[o + j] = d;
    out.values[o - j] = d;
  });
  return out;
}

DecayFit fit_decay(const ChargeTrajectory& traj, std::size_t min_samples) {
  const double t_to = traj.last_time();
  const double t_from = 0.1 * t_to;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t k = 0; k < traj.q.size(); ++k) {
    const double t = traj.grid.node(k);
    if (t < t_from || t <= 0.0 || traj.q[k] == 0.0) continue;
    const double x = std::log(t), y = std::log(std::abs(traj.q[k]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < min_samples || m < 2) {
    const double need = traj.grid.t0() + 10.0 / 9.0 * traj.grid.dt() * static_cast<double>(min_samples);
    throw std::invalid_argument("fit_decay: only " + std::to_string(m) + " samples in the last decade; need " +
                                std::to_string(min_samples) + " (T_max >= " + std::to_string(need) + ")");
  }
  const double md = static_cast<double>(m);
  const double slope = (md * sxy - sx * sy) / (md * sxx - sx * sx);
  const double icpt = (sy - slope * sx) / md;
  return {-slope, std::exp(icpt), t_from, t_to, m};
}

ScatteringDiagnostics scattering_diagnostics(const ChargeTrajectory& traj, const InitialDatum& datum,
                                             const ScatteringConfig& cfg) {
  if (!traj.completed())
    throw std::invalid_argument("scattering_diagnostics: trajectory ended with " + status_name(traj.status));
  if (traj.grid.t0() != 0.0) throw std::invalid_argument("scattering_diagnostics: trajectory must start at t = 0");
  ScatteringDiagnostics d{traj.last_time(), 0.0, {}, scattering_state(traj, datum, cfg.grid, cfg.threads), {}, {}};
  d.lq_exponent = cfg.lq_exponent > 0.0 ? cfg.lq_exponent : exponents(traj.p).q;
  d.lq_tail = lq_tail(traj, d.lq_exponent);
  for (double T : cfg.residual_times)
    d.h1_residual.emplace_back(T, sobolev_h1(duhamel_tail(traj, T, cfg.grid, cfg.threads)).h1);
  if (datum.is_zero()) {
    d.decay = {0.0, 0.0, 0.1 * d.t_max, d.t_max, 0};
    return d;
  }
  d.decay = fit_decay(traj, cfg.min_fit_samples);
  return d;
}

}  // namespace pointnls
