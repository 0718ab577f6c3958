#include "pointnls/schrodinger_kernel.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "pointnls/abel.hpp"
#include "pointnls/faddeeva.hpp"

namespace pointnls {
namespace {

constexpr std::array<std::array<double, 2>, 8> kGauss8{{
    {-0.96028985649753618, 0.10122853629037669},
    {-0.79666647741362673, 0.22238103445337434},
    {-0.52553240991632899, 0.31370664587788705},
    {-0.18343464249564978, 0.36268378337836177},
    {0.18343464249564978, 0.36268378337836177},
    {0.52553240991632899, 0.31370664587788705},
    {0.79666647741362673, 0.22238103445337434},
    {0.96028985649753618, 0.10122853629037669},
}};

// Smooth enough for the panel rule: far from the singularity relative to the panel width,
// and phase a/u varies by at most ~0.25 across the panel.
bool smooth_panel(double a, double h, std::size_t m) {
  if (m < 16) return false;
  const double u = static_cast<double>(m) * h;
  return a * h / (u * u) <= 0.25;
}

}  // namespace

ChirpMoments chirp_moments(double a, double u) {
  if (!(u > 0.0)) return {0.0, 0.0};
  const double su = std::sqrt(u);
  if (a == 0.0) return {2.0 * su, (2.0 / 3.0) * u * su};
  const cplx phase = std::polar(1.0, a / u);
  const cplx e1 = std::polar(1.0, pi / 4.0);
  const cplx e3 = std::polar(1.0, 3.0 * pi / 4.0);
  const cplx f0 = phase * (2.0 * su + 2.0 * std::sqrt(pi * a) * e3 * faddeeva(e1 * std::sqrt(a / u)));
  const cplx f1 = (2.0 / 3.0) * u * su * phase + cplx(0.0, 2.0 * a / 3.0) * f0;
  return {f0, f1};
}

ChirpWeights::ChirpWeights(double x, double dt, std::size_t n_lags) : x_(x), dt_(dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("ChirpWeights: dt must be positive");
  if (n_lags == 0) throw std::invalid_argument("ChirpWeights: need at least one lag");
  near_.resize(n_lags);
  far_.resize(n_lags);
  const double a = 0.25 * x * x;
  const double sh = std::sqrt(dt);
  if (a == 0.0) {
    for (std::size_t m = 0; m < n_lags; ++m) {
      const AbelPanel p = abel_panel(m);
      near_[m] = p.near * sh;
      far_[m] = p.far * sh;
    }
    return;
  }
  std::optional<ChirpMoments> lo;
  for (std::size_t m = 0; m < n_lags; ++m) {
    const double u0 = static_cast<double>(m) * dt;
    const double u1 = static_cast<double>(m + 1) * dt;
    if (smooth_panel(a, dt, m)) {
      cplx r = 0.0, l = 0.0;
      for (const auto& [xi, wi] : kGauss8) {
        const double s = 0.5 * (1.0 + xi);  // position in the panel, 0..1
        const double u = u0 + s * dt;
        const cplx k = std::polar(1.0 / std::sqrt(u), a / u) * (0.5 * wi * dt);
        r += k * (1.0 - s);
        l += k * s;
      }
      near_[m] = r;
      far_[m] = l;
      lo.reset();
      continue;
    }
    if (!lo) lo = chirp_moments(a, u0);
    const ChirpMoments hi = chirp_moments(a, u1);
    const cplx d0 = hi.f0 - lo->f0;
    const cplx d1 = hi.f1 - lo->f1;
    near_[m] = (u1 * d0 - d1) / dt;
    far_[m] = (d1 - u0 * d0) / dt;
    lo = hi;
  }
}

cplx ChirpWeights::weight(std::size_t k, std::size_t m) const {
  if (k > n_lags()) throw std::out_of_range("ChirpWeights: k beyond table");
  if (m > k) return 0.0;
  cplx w = 0.0;
  if (m < k) w += near_[m];
  if (m >= 1) w += far_[m - 1];
  return w;
}

cplx ChirpWeights::convolve(std::span<const cplx> f, std::size_t k) const {
  if (k > n_lags()) throw std::out_of_range("ChirpWeights: k beyond table");
  if (f.size() < k + 1) throw std::out_of_range("ChirpWeights: series shorter than k + 1");
  cplx acc = 0.0;
  for (std::size_t m = 0; m < k; ++m) acc += near_[m] * f[k - m] + far_[m] * f[k - m - 1];
  return acc;
}

cplx ChirpWeights::integrate_conj(std::span<const cplx> f) const {
  if (f.empty()) throw std::invalid_argument("ChirpWeights: empty series");
  const std::size_t n = f.size() - 1;
  if (n > n_lags()) throw std::out_of_range("ChirpWeights: series longer than table");
  cplx acc = 0.0;
  for (std::size_t m = 0; m < n; ++m) acc += std::conj(near_[m]) * f[m] + std::conj(far_[m]) * f[m + 1];
  return acc;
}

}  // namespace pointnls
