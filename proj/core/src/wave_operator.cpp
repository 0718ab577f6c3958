#include "pointnls/wave_operator.hpp"

#include <cmath>
#include <string>

#include "pointnls/abel.hpp"
#include "pointnls/free_propagator.hpp"
#include "pointnls/parallel.hpp"
#include "pointnls/schrodinger_kernel.hpp"

namespace pointnls {

WaveOperatorResult wave_operator(const InitialDatum& psi_plus, double p, double T, double T_max,
                                 const WaveOperatorConfig& cfg) {
  if (!(p > 1.0)) throw std::invalid_argument("wave_operator: p must exceed 1");
  if (!(T >= 0.0) || !(T_max > T)) throw std::invalid_argument("wave_operator: need 0 <= T < T_max");
  if (!(cfg.damping > 0.0 && cfg.damping <= 1.0)) throw std::invalid_argument("wave_operator: damping in (0, 1]");
  const TimeGrid grid = TimeGrid::covering(T, cfg.dt, T_max - T);
  const std::size_t n = grid.n_steps();
  const AbelWeights weights(grid);

  std::vector<cplx> drive(n + 1);
  for (std::size_t k = 0; k <= n; ++k) drive[k] = free_evolution(psi_plus, 0.0, grid.node(k));

  std::vector<cplx> q = drive, N(n + 1), update(n + 1);
  double first = -1.0, prev = -1.0, ratio = 0.0;
  int it = 0;
  for (;;) {
    ++it;
    for (std::size_t k = 0; k <= n; ++k) N[k] = power_nonlinearity(q[k], p);
    double change = 0.0, scale = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
      const cplx target = drive[k] + forward_prefactor * weights.apply_forward(std::span<const cplx>(N).subspan(k));
      update[k] = cfg.damping * (target - q[k]);
      change = std::max(change, std::abs(update[k]));
    }
    for (std::size_t k = 0; k <= n; ++k) {
      q[k] += update[k];
      scale = std::max(scale, std::abs(q[k]));
    }
    if (prev > 0.0) ratio = change / prev;
    if (first < 0.0) first = change;
    prev = change;
    if (!std::isfinite(change) || (first > 0.0 && change > cfg.divergence_factor * first))
      throw WaveOperatorDivergence("wave_operator: fixed-point iteration diverged (contraction " +
                                       std::to_string(ratio) + "); increase T or reduce the data",
                                   ratio, it);
    if (change <= cfg.tol * std::max(scale, 1e-300)) break;
    if (it >= cfg.max_iters)
      throw WaveOperatorDivergence("wave_operator: no convergence in " + std::to_string(it) + " iterations", ratio, it);
  }

  ChargeTrajectory traj{grid, q, Completed{}, p, true, it};
  for (std::size_t k = 0; k <= n; ++k) N[k] = power_nonlinearity(q[k], p);
  FieldSnapshot psi{cfg.grid, std::vector<cplx>(cfg.grid.size()), T};
  const std::size_t o = cfg.grid.origin();
  const cplx pref = cplx(0.0, -1.0) * backward_prefactor;
  parallel_for(o + 1, cfg.threads, [&](std::size_t j) {
    const double x = cfg.grid.x(o + j);
    const cplx d = pref * ChirpWeights(x, cfg.dt, n).integrate_conj(N);
    psi.values[o + j] = free_evolution(psi_plus, x, T) + d;
    if (j > 0) psi.values[o - j] = free_evolution(psi_plus, -x, T) + d;
  });
  return {std::move(traj), std::move(psi), it, ratio};
}

}  // namespace pointnls
