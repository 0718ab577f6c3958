#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pointnls/time_grid.hpp"
#include "pointnls/types.hpp"

namespace pointnls {

/// Unit-step hat moments of v^{-1/2} on the panel [m, m+1]: `near` multiplies the node
/// at lag m, `far` the node at lag m+1. Evaluated in a cancellation-free form.
struct AbelPanel {
  double near;
  double far;
};
AbelPanel abel_panel(std::size_t m);

/// Product-integration weights for int_0^{t_k} (t_k - s)^{-1/2} g(s) ds with g piecewise
/// linear on the grid. w[k][j] depends only on k - j and on whether j is 0 or k, so the
/// table is O(n) (stored reversed so history sums are contiguous dot products).
class AbelWeights {
 public:
  explicit AbelWeights(const TimeGrid& grid);
  AbelWeights(double dt, std::size_t n_steps);

  double dt() const { return dt_; }
  std::size_t n_steps() const { return n_steps_; }
  int order() const { return 1; }

  /// w[k][j]; zero outside 0 <= j <= k.
  double weight(std::size_t k, std::size_t j) const;
  /// w[k][k], the same for every k >= 1.
  double diagonal() const { return diag_; }

  /// sum_{j=0..k} w[k][j] f_j.
  cplx apply(std::span<const cplx> f, std::size_t k) const;
  /// sum_{j=0..k-1} w[k][j] f_j (everything except the diagonal node); needs f_0..f_{k-1}.
  cplx history(std::span<const cplx> f, std::size_t k) const;
  /// sum_{m=0..n} w[n][n-m] f_m with n = f.size() - 1: the same rule for the kernel
  /// (tau - t_0)^{-1/2} looking forward from the first node.
  cplx apply_forward(std::span<const cplx> f) const;

 private:
  double dt_;
  std::size_t n_steps_;
  double diag_ = 0.0;
  std::vector<double> interior_rev_;  // interior_rev_[n_steps - m] = weight of lag m, 1 <= m
  std::vector<double> start_;         // start_[k] = w[k][0]
};

/// [L_0 f](0, t_k) = (1/sqrt(4 pi i)) sum_j w[k][j] f_j.
cplx apply_L_at_origin(std::span<const cplx> f, const AbelWeights& weights, std::size_t k);

/// [L_0 f](x, t_k) with the kernel exp(i x^2/(4(t_k - tau)))/sqrt(4 pi i (t_k - tau)),
/// integrated exactly against the piecewise-linear interpolant of f. x = 0 delegates to
/// apply_L_at_origin.
cplx apply_L_at_x(std::span<const cplx> f, const AbelWeights& weights, std::size_t k, double x);

struct LambdaTail {
  cplx value;
  double t;
  double t_max;
  /// Dropping f beyond t_max changes the value by at most this times ||f||_{L^1(t_max, inf)}.
  double tail_kernel_bound;
};

/// Truncated [Lambda f](0, t) = backward_prefactor * int_t^{t_max} (tau - t)^{-1/2} f(tau) dtau
/// with f sampled on [t, t_max] at the weights' step. backward_prefactor is i/sqrt(4 pi i)
/// (principal branch of 1/sqrt(4 pi i (t - tau)) for tau > t).
LambdaTail apply_Lambda_tail(std::span<const cplx> f_window, const AbelWeights& weights, double t);

/// Truncated [Lambda f](x, t) with the conjugate oscillatory kernel.
LambdaTail apply_Lambda_tail_at_x(std::span<const cplx> f_window, const AbelWeights& weights, double t,
                                  double x);

}  // namespace pointnls
