#include "pointnls/abel.hpp"

#include <cmath>
#include <stdexcept>

#include "pointnls/schrodinger_kernel.hpp"

namespace pointnls {

AbelPanel abel_panel(std::size_t m) {
  const double s0 = std::sqrt(static_cast<double>(m));
  const double s1 = std::sqrt(static_cast<double>(m) + 1.0);
  const double D = 1.0 / (s0 + s1);  // = s1 - s0
  return {D * (4.0 / 3.0 - (2.0 / 3.0) * s0 * D), (2.0 / 3.0) * D * (1.0 + s0 * D)};
}

AbelWeights::AbelWeights(const TimeGrid& grid) : AbelWeights(grid.dt(), grid.n_steps()) {}

AbelWeights::AbelWeights(double dt, std::size_t n_steps) : dt_(dt), n_steps_(n_steps) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("AbelWeights: dt must be positive");
  if (n_steps == 0) throw std::invalid_argument("AbelWeights: n_steps must be at least 1");
  const double sh = std::sqrt(dt);
  interior_rev_.assign(n_steps + 1, 0.0);
  start_.assign(n_steps + 1, 0.0);
  AbelPanel prev = abel_panel(0);
  diag_ = prev.near * sh;
  start_[1] = prev.far * sh;
  for (std::size_t m = 1; m <= n_steps; ++m) {
    const AbelPanel cur = abel_panel(m);
    interior_rev_[n_steps - m] = (cur.near + prev.far) * sh;
    if (m + 1 <= n_steps) start_[m + 1] = cur.far * sh;
    prev = cur;
  }
}

double AbelWeights::weight(std::size_t k, std::size_t j) const {
  if (k > n_steps_) throw std::out_of_range("AbelWeights: k beyond grid");
  if (k == 0 || j > k) return 0.0;
  if (j == k) return diag_;
  if (j == 0) return start_[k];
  return interior_rev_[n_steps_ - (k - j)];
}

cplx AbelWeights::history(std::span<const cplx> f, std::size_t k) const {
  if (k > n_steps_) throw std::out_of_range("AbelWeights: k beyond grid");
  if (f.size() < k) throw std::out_of_range("AbelWeights: series shorter than k");
  if (k == 0) return 0.0;
  // interior lags j = 1..k-1 map to interior_rev_[n - k + j], contiguous in j.
  const double* w = interior_rev_.data() + (n_steps_ - k);
  double re = 0.0, im = 0.0;
  for (std::size_t j = 1; j < k; ++j) {
    re += w[j] * f[j].real();
    im += w[j] * f[j].imag();
  }
  return cplx(re, im) + start_[k] * f[0];
}

cplx AbelWeights::apply(std::span<const cplx> f, std::size_t k) const {
  if (k == 0) {
    if (f.empty()) throw std::out_of_range("AbelWeights: empty series");
    return 0.0;
  }
  if (f.size() < k + 1) throw std::out_of_range("AbelWeights: series shorter than k + 1");
  return history(f, k) + diag_ * f[k];
}

cplx AbelWeights::apply_forward(std::span<const cplx> f) const {
  if (f.empty()) throw std::invalid_argument("AbelWeights: empty window");
  const std::size_t n = f.size() - 1;
  if (n > n_steps_) throw std::out_of_range("AbelWeights: window longer than the weight table");
  if (n == 0) return 0.0;
  cplx acc = diag_ * f[0] + start_[n] * f[n];
  for (std::size_t m = 1; m < n; ++m) acc += interior_rev_[n_steps_ - m] * f[m];
  return acc;
}

cplx apply_L_at_origin(std::span<const cplx> f, const AbelWeights& weights, std::size_t k) {
  return forward_prefactor * weights.apply(f, k);
}

cplx apply_L_at_x(std::span<const cplx> f, const AbelWeights& weights, std::size_t k, double x) {
  if (x == 0.0) return apply_L_at_origin(f, weights, k);
  if (k > weights.n_steps()) throw std::out_of_range("apply_L_at_x: k beyond grid");
  if (f.size() < k + 1) throw std::out_of_range("apply_L_at_x: series shorter than k + 1");
  if (k == 0) return 0.0;
  const ChirpWeights cw(x, weights.dt(), k);
  return forward_prefactor * cw.convolve(f, k);
}

namespace {
LambdaTail make_tail(cplx sum, std::size_t n, double dt, double t) {
  const double t_max = t + static_cast<double>(n) * dt;
  const double bound = n == 0 ? INFINITY : 1.0 / std::sqrt(4.0 * pi * (t_max - t));
  return {backward_prefactor * sum, t, t_max, bound};
}
}  // namespace

LambdaTail apply_Lambda_tail(std::span<const cplx> f_window, const AbelWeights& weights, double t) {
  if (f_window.empty()) throw std::invalid_argument("apply_Lambda_tail: empty window");
  return make_tail(weights.apply_forward(f_window), f_window.size() - 1, weights.dt(), t);
}

LambdaTail apply_Lambda_tail_at_x(std::span<const cplx> f_window, const AbelWeights& weights, double t,
                                  double x) {
  if (x == 0.0) return apply_Lambda_tail(f_window, weights, t);
  if (f_window.empty()) throw std::invalid_argument("apply_Lambda_tail_at_x: empty window");
  const std::size_t n = f_window.size() - 1;
  if (n > weights.n_steps()) throw std::out_of_range("apply_Lambda_tail_at_x: window longer than table");
  if (n == 0) return make_tail(0.0, 0, weights.dt(), t);
  const ChirpWeights cw(x, weights.dt(), n);
  return make_tail(cw.integrate_conj(f_window), n, weights.dt(), t);
}

}  // namespace pointnls
