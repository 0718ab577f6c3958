#include "pointnls/ground_state.hpp"

#include <cmath>
#include <stdexcept>

namespace pointnls {

CriticalExponents exponents(double p) {
  if (!(p > 1.0)) throw std::invalid_argument("exponents: p must exceed 1");
  const double sc = 0.5 - 1.0 / (p - 1.0);
  return {p, sc, 2.0 * (p - 1.0), 2.0 * (p - 1.0) / p, std::abs(sc) < 1e-12};
}

GroundStateData ground_state(double p) {
  if (!(p > 1.0)) throw std::invalid_argument("ground_state: p must exceed 1");
  GroundStateData g;
  g.p = p;
  g.amplitude = std::pow(2.0, 1.0 / (p - 1.0));
  g.mass = g.amplitude * g.amplitude;
  g.grad_norm = g.amplitude;
  g.energy = g.mass * (p - 3.0) / (2.0 * (p + 1.0));
  if (p > 3.0) {
    const double sc = exponents(p).sigma_c;
    g.threshold_exponent = (1.0 - sc) / sc;
    g.threshold = std::pow(g.mass, *g.threshold_exponent) * g.energy;
  }
  return g;
}

double ground_state_profile(double p, double x) { return std::pow(2.0, 1.0 / (p - 1.0)) * std::exp(-std::abs(x)); }

StationaryResidual stationary_residual(double p, double dx) {
  if (!(p > 1.0)) throw std::invalid_argument("stationary_residual: p must exceed 1");
  if (!(dx > 0.0 && dx < 0.25)) throw std::invalid_argument("stationary_residual: dx must lie in (0, 0.25)");
  StationaryResidual r{0.0, 0.0};
  for (double x : {-3.0, -1.0, -0.5, 0.5, 1.0, 3.0}) {
    const double f0 = ground_state_profile(p, x);
    const double d2 = (ground_state_profile(p, x + dx) - 2.0 * f0 + ground_state_profile(p, x - dx)) / (dx * dx);
    r.interior = std::max(r.interior, std::abs(d2 - f0));
  }
  const double a = std::pow(2.0, 1.0 / (p - 1.0));
  const double jump = -2.0 * a;  // phi'(0+) - phi'(0-) = -a - a
  r.jump = std::abs(jump + std::pow(a, p - 1.0) * a);
  return r;
}

}  // namespace pointnls
