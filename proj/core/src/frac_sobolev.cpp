#include "pointnls/frac_sobolev.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace pointnls {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void check_mu(double mu) {
  if (!(mu > -0.5 && mu < 1.0)) throw std::invalid_argument("fractional norm: mu must lie in (-1/2, 1)");
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

double homogeneous_sobolev_norm(std::span<const cplx> samples, double spacing, double mu, std::size_t padding) {
  check_mu(mu);
  if (samples.empty()) throw std::invalid_argument("fractional norm: empty window");
  if (!(spacing > 0.0)) throw std::invalid_argument("fractional norm: spacing must be positive");
  const std::size_t N = next_pow2(std::max<std::size_t>(1, padding) * samples.size());

  std::vector<cplx> buf(N, 0.0);
  std::copy(samples.begin(), samples.end(), buf.begin());
  auto* data = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(N), data, data, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }

  // |w|^{2 mu} averaged over each frequency cell, which keeps the singular weight at w = 0
  // (mu < 0) and the neighbouring cells accurate.
  const double dw = 2.0 * pi / (static_cast<double>(N) * spacing);
  const double e = 2.0 * mu + 1.0;
  const double scale = std::pow(dw, 2.0 * mu) / e;
  double acc = scale * 2.0 * std::pow(0.5, e) * std::norm(buf[0]);
  for (std::size_t m = 1; m < N; ++m) {
    const double idx = m <= N / 2 ? static_cast<double>(m) : static_cast<double>(N - m);
    acc += scale * (std::pow(idx + 0.5, e) - std::pow(idx - 0.5, e)) * std::norm(buf[m]);
  }
  return std::sqrt(acc * spacing * spacing * dw / (2.0 * pi));
}

double frac_sobolev_norm(std::span<const cplx> samples, const TimeGrid& grid, const FracNormSpec& spec) {
  check_mu(spec.mu);
  if (!(spec.taper_fraction >= 0.0 && spec.taper_fraction <= 0.5))
    throw std::invalid_argument("fractional norm: taper_fraction must lie in [0, 0.5]");
  if (samples.size() > grid.size()) throw std::invalid_argument("fractional norm: more samples than nodes");
  std::vector<cplx> window;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double t = grid.node(k);
    if (t >= spec.t_a && t <= spec.t_b) window.push_back(samples[k]);
  }
  if (window.empty()) throw std::invalid_argument("fractional norm: empty window");
  apply_raised_cosine_taper(window, spec.taper_fraction);
  return homogeneous_sobolev_norm(window, grid.dt(), spec.mu, spec.padding);
}

std::vector<cplx> hilbert_truncate(std::span<const cplx> samples, const TimeGrid& grid, double a, double b) {
  std::vector<cplx> out(samples.begin(), samples.end());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double t = grid.node(k);
    if (t < a || t > b) out[k] = 0.0;
  }
  return out;
}

void apply_raised_cosine_taper(std::span<cplx> samples, double fraction) {
  const std::size_t n = samples.size();
  const auto ramp = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n)));
  if (ramp == 0) return;
  for (std::size_t i = 0; i < ramp; ++i) {
    const double w = 0.5 * (1.0 - std::cos(pi * (static_cast<double>(i) + 0.5) / static_cast<double>(ramp)));
    samples[i] *= w;
    samples[n - 1 - i] *= w;
  }
}

}  // namespace pointnls
