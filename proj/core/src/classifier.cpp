#include "pointnls/classifier.hpp"

#include <cmath>
#include <stdexcept>

#include "pointnls/frac_sobolev.hpp"
#include "pointnls/ground_state.hpp"
#include "pointnls/observables.hpp"

namespace pointnls {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::GlobalScattersExpected:
      return "GlobalScattersExpected";
    case Verdict::BlowUpExpected:
      return "BlowUpExpected";
    case Verdict::AboveThresholdIndeterminate:
      return "AboveThresholdIndeterminate";
  }
  return "?";
}

double homogeneous_norm(const InitialDatum& datum, double s) {
  if (!(s >= 0.0 && s < 1.0)) throw std::invalid_argument("homogeneous_norm: s must lie in [0, 1)");
  if (datum.is_zero()) return 0.0;
  if (const auto* sp = std::get_if<SampledProfile>(&datum.kind())) {
    std::vector<cplx> v(sp->values);
    for (auto& x : v) x *= datum.gain();
    return homogeneous_sobolev_norm(v, sp->grid.dx(), s, 4);
  }
  // xi = c + w tan(theta), midpoint rule in theta on (-pi/2, pi/2).
  double c = 0.0, w = 1.0;
  if (const auto* g = std::get_if<GaussianPacket>(&datum.kind())) {
    c = 0.5 * g->velocity;
    w = 2.0 / g->width;
  } else {
    w = std::get<GroundStateProfile>(datum.kind()).dilation;
  }
  const int n = 40000;
  const double h = pi / n;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double th = -0.5 * pi + (i + 0.5) * h;
    const double t = std::tan(th);
    const double xi = c + w * t;
    const double jac = w * (1.0 + t * t);
    acc += std::pow(std::abs(xi), 2.0 * s) * std::norm(*datum.fourier(xi)) * jac;
  }
  return std::sqrt(acc * h / (2.0 * pi));
}

ClassificationResult classify(const InitialDatum& datum, double p, const ClassifierConfig& cfg) {
  if (!(p > 3.0)) throw std::domain_error("classify: the dichotomy needs p > 3");
  const GroundStateData gs = ground_state(p);
  const double e = *gs.threshold_exponent;
  ClassificationResult r{};
  r.p = p;
  r.mass = datum.mass();
  r.grad_sq = datum.grad_sq();
  r.energy = datum.energy(p);
  r.me_product = std::pow(r.mass, e) * r.energy;
  r.threshold = *gs.threshold;
  r.eta0 = eta_from_norms(r.mass, r.grad_sq, p);
  const double tol = cfg.boundary_tol;
  const bool below = r.me_product < r.threshold * (1.0 - tol);
  if (r.energy < 0.0)
    r.verdict = Verdict::BlowUpExpected;
  else if (below && r.eta0 < 1.0 - tol)
    r.verdict = Verdict::GlobalScattersExpected;
  else if (below && r.eta0 > 1.0 + tol)
    r.verdict = Verdict::BlowUpExpected;
  else
    r.verdict = Verdict::AboveThresholdIndeterminate;
  r.sigma_c_norm = homogeneous_norm(datum, exponents(p).sigma_c);
  r.delta_sd = cfg.delta_sd;
  r.small_data = r.sigma_c_norm < cfg.delta_sd;
  return r;
}

}  // namespace pointnls
