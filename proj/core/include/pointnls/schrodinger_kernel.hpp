#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pointnls/types.hpp"

namespace pointnls {

/// Antiderivatives F0(u) = int_0^u v^{-1/2} e^{ia/v} dv and F1(u) = int_0^u v^{1/2} e^{ia/v} dv.
struct ChirpMoments {
  cplx f0;
  cplx f1;
};
ChirpMoments chirp_moments(double a, double u);

/// Hat-function weights of K(u) = u^{-1/2} exp(i a/u), a = x^2/4, on lags u_m = m*dt.
/// Panels close to the singularity use the closed-form moments; smooth panels further out
/// use 8-point Gauss-Legendre, which avoids the cancellation of the moment differences.
/// At x = 0 the weights coincide with the Abel weights.
class ChirpWeights {
 public:
  ChirpWeights(double x, double dt, std::size_t n_lags);

  double x() const { return x_; }
  double dt() const { return dt_; }
  std::size_t n_lags() const { return near_.size(); }

  /// Weight of lag m in the integral over [0, u_k].
  cplx weight(std::size_t k, std::size_t m) const;
  /// sum_j weight(k, k - j) f_j: int_0^{t_k} K(t_k - s) f(s) ds.
  cplx convolve(std::span<const cplx> f, std::size_t k) const;
  /// sum_m conj(weight(n, m)) f_m with n = f.size() - 1: int_0^{u_n} conj(K(u)) f(u) du.
  cplx integrate_conj(std::span<const cplx> f) const;

 private:
  double x_;
  double dt_;
  std::vector<cplx> near_;  // panel m, node at lag m
  std::vector<cplx> far_;   // panel m, node at lag m + 1
};

}  // namespace pointnls
