#include "pointnls/observables.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pointnls/ground_state.hpp"

namespace pointnls {
namespace {
double origin_modulus(const FieldSnapshot& snap, std::optional<cplx> origin) {
  return std::abs(origin ? *origin : snap.origin_value());
}
}  // namespace

MassEnergy mass_energy(const FieldSnapshot& snap, double p, std::optional<cplx> origin) {
  const H1Norms n = sobolev_h1(snap);
  const double q = origin_modulus(snap, origin);
  return {n.mass, 0.5 * n.grad_sq - std::pow(q, p + 1.0) / (p + 1.0)};
}

double eta_from_norms(double mass, double grad_sq, double p) {
  if (!(p > 3.0)) throw std::domain_error("eta: requires p > 3");
  const GroundStateData g = ground_state(p);
  const double e = *g.threshold_exponent;
  return std::pow(std::sqrt(mass), e) * std::sqrt(grad_sq) / (std::pow(g.amplitude, e) * g.grad_norm);
}

double eta(const FieldSnapshot& snap, double p) {
  const H1Norms n = sobolev_h1(snap);
  return eta_from_norms(n.mass, n.grad_sq, p);
}

double gn_functional(const FieldSnapshot& snap, std::optional<cplx> origin) {
  const double q = origin_modulus(snap, origin);
  if (q == 0.0) throw std::domain_error("gn_functional: psi(0) = 0");
  const H1Norms n = sobolev_h1(snap);
  return std::sqrt(n.mass * n.grad_sq) / (q * q);
}

double coercivity_gap(const FieldSnapshot& snap, double p, std::optional<cplx> origin) {
  const H1Norms n = sobolev_h1(snap);
  return 4.0 * n.grad_sq - 2.0 * std::pow(origin_modulus(snap, origin), p + 1.0);
}

ObservableRecord observe(const FieldSnapshot& snap, double p, std::optional<cplx> origin) {
  const H1Norms n = sobolev_h1(snap);
  const double q = origin_modulus(snap, origin);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  ObservableRecord r;
  r.t = snap.t;
  r.mass = n.mass;
  r.energy = 0.5 * n.grad_sq - std::pow(q, p + 1.0) / (p + 1.0);
  r.eta = p > 3.0 ? eta_from_norms(n.mass, n.grad_sq, p) : nan;
  r.gn = q > 0.0 ? std::sqrt(n.mass * n.grad_sq) / (q * q) : nan;
  r.gap = 4.0 * n.grad_sq - 2.0 * std::pow(q, p + 1.0);
  return r;
}

}  // namespace pointnls
