#include "pointnls/free_propagator.hpp"

#include <cmath>
#include <stdexcept>

#include "pointnls/faddeeva.hpp"
#include "pointnls/parallel.hpp"

namespace pointnls {
namespace {

const cplx kEighth = std::polar(1.0, pi / 4.0);

cplx gaussian_evolution(const GaussianPacket& g, double x, double t) {
  const double alpha = 1.0 / (g.width * g.width);
  const double k = 0.5 * g.velocity;
  const cplx s = cplx(1.0, 4.0 * alpha * t);
  const double y = x - g.center - 2.0 * k * t;
  return g.amplitude / std::sqrt(s) * std::exp(cplx(0.0, k * x - k * k * t) - alpha * y * y / s);
}

// e^{i t d^2} e^{-|x|} for t > 0, x >= 0.
cplx exponential_forward(double x, double t) {
  const double st = std::sqrt(t);
  const double r = x / (2.0 * st);
  const cplx chirp = std::polar(1.0, x * x / (4.0 * t));
  if (x == 0.0) return faddeeva(std::polar(st, 3.0 * pi / 4.0));
  const cplx z2 = kEighth * cplx(r, st);
  const cplx z1 = kEighth * cplx(r, -st);
  const cplx term2 = 0.5 * chirp * faddeeva(z2);
  cplx term1;
  if (z1.imag() >= 0.0)
    term1 = std::exp(cplx(-x, t)) - 0.5 * chirp * faddeeva(z1);
  else
    term1 = 0.5 * chirp * faddeeva(-z1);
  return term1 + term2;
}

// int_0^z exp(i b s^2) ds for b > 0.
cplx fresnel_m0(double b, double z) {
  if (z == 0.0) return 0.0;
  const double az = std::abs(z);
  const double sb = std::sqrt(b);
  // erf(e^{-i pi/4} sqrt(b) az) = 1 - exp(i b az^2) w(e^{i pi/4} sqrt(b) az)
  const cplx erf = 1.0 - std::polar(1.0, b * az * az) * faddeeva(kEighth * (sb * az));
  const cplx m = std::sqrt(pi) / (2.0 * sb) * kEighth * erf;
  return z > 0.0 ? m : -m;
}

// int_{z0}^{z1} s exp(i b s^2) ds.
cplx fresnel_m1_diff(double b, double z0, double z1) {
  const double th0 = b * z0 * z0;
  const double dth = b * (z1 - z0) * (z1 + z0);
  // (e^{i th1} - e^{i th0}) / (2ib) = e^{i(th0 + dth/2)} sin(dth/2) / b
  return std::polar(std::sin(0.5 * dth) / b, th0 + 0.5 * dth);
}

cplx sampled_forward(const SampledProfile& s, double x, double t) {
  const double b = 1.0 / (4.0 * t);
  const double h = s.grid.dx();
  const std::size_t N = s.grid.size();
  cplx acc = 0.0;
  double z0 = s.grid.x(0) - x;
  cplx m0_lo = fresnel_m0(b, z0);
  for (std::size_t j = 0; j + 1 < N; ++j) {
    const double z1 = s.grid.x(j + 1) - x;
    const cplx m0_hi = fresnel_m0(b, z1);
    const cplx slope = (s.values[j + 1] - s.values[j]) / h;
    // f = f_j + slope (z - z0) on the segment
    acc += s.values[j] * (m0_hi - m0_lo) + slope * (fresnel_m1_diff(b, z0, z1) - z0 * (m0_hi - m0_lo));
    z0 = z1;
    m0_lo = m0_hi;
  }
  return acc / (sqrt_4pi_i * std::sqrt(t));
}

}  // namespace

cplx free_exponential(double x, double t) {
  const double ax = std::abs(x);
  if (t == 0.0) return std::exp(-ax);
  if (t > 0.0) return exponential_forward(ax, t);
  return std::conj(exponential_forward(ax, -t));
}

cplx free_evolution(const InitialDatum& datum, double x, double t) {
  if (datum.is_zero()) return 0.0;
  if (t == 0.0) return datum.value(x);
  const cplx gain = datum.gain();
  if (const auto* g = std::get_if<GaussianPacket>(&datum.kind())) return gain * gaussian_evolution(*g, x, t);
  if (const auto* s = std::get_if<GroundStateProfile>(&datum.kind())) {
    const double b = s->dilation;
    return gain * std::pow(2.0, 1.0 / (s->p - 1.0)) * free_exponential(b * x, b * b * t);
  }
  const auto& s = std::get<SampledProfile>(datum.kind());
  if (t > 0.0) return gain * sampled_forward(s, x, t);
  SampledProfile c = s;
  for (auto& v : c.values) v = std::conj(v);
  return gain * std::conj(sampled_forward(c, x, -t));
}

OriginDrive propagate_at_origin(const InitialDatum& datum, const TimeGrid& grid) {
  OriginDrive d{grid, std::vector<cplx>(grid.size())};
  for (std::size_t k = 0; k < grid.size(); ++k) d.values[k] = free_evolution(datum, 0.0, grid.node(k));
  return d;
}

FieldSnapshot propagate_on_grid(const InitialDatum& datum, double t, const SpatialGrid& grid, unsigned threads) {
  FieldSnapshot snap{grid, std::vector<cplx>(grid.size()), t};
  if (t == 0.0) {
    for (std::size_t i = 0; i < grid.size(); ++i) snap.values[i] = datum.value(grid.x(i));
    return snap;
  }
  parallel_for(grid.size(), threads, [&](std::size_t i) { snap.values[i] = free_evolution(datum, grid.x(i), t); });
  return snap;
}

}  // namespace pointnls
