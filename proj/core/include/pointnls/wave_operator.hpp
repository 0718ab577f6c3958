#pragma once

#include <stdexcept>

#include "pointnls/charge_solver.hpp"
#include "pointnls/field.hpp"
#include "pointnls/initial_datum.hpp"

namespace pointnls {

struct WaveOperatorConfig {
  double dt = 0.01;
  double damping = 1.0;  // q <- (1 - damping) q + damping * update
  double tol = 1e-12;    // sup-norm change relative to sup |q|
  int max_iters = 200;
  double divergence_factor = 1e3;
  SpatialGrid grid = SpatialGrid(120.0, 1.0 / 32.0);
  unsigned threads = 1;
};

struct WaveOperatorResult {
  ChargeTrajectory trajectory;  // on [T, T_max]
  FieldSnapshot psi_at_T;
  int iterations;
  double contraction;  // last ratio of successive update norms
};

class WaveOperatorDivergence : public std::runtime_error {
 public:
  WaveOperatorDivergence(const std::string& what, double contraction, int iterations)
      : std::runtime_error(what), contraction(contraction), iterations(iterations) {}
  double contraction;
  int iterations;
};

/// Solves q(t) = [e^{it d^2} psi^+](0) + (1/sqrt(4 pi i)) int_t^{T_max} (tau - t)^{-1/2} |q|^{p-1} q dtau
/// on [T, T_max] by damped fixed-point iteration over the whole window, then assembles
/// psi(T) = e^{iT d^2} psi^+ - i Lambda(N)(T) on the grid. Throws WaveOperatorDivergence.
WaveOperatorResult wave_operator(const InitialDatum& psi_plus, double p, double T, double T_max,
                                 const WaveOperatorConfig& cfg = {});

}  // namespace pointnls
