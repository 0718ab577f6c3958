#pragma once

#include <complex>
#include <numbers>

namespace pointnls {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/// sqrt(4*pi*i) on the principal branch: 2*sqrt(pi)*exp(i*pi/4).
inline const cplx sqrt_4pi_i = 2.0 * std::sqrt(pi) * std::polar(1.0, pi / 4.0);

/// Prefactor of the forward point-source kernel at the origin, 1/sqrt(4*pi*i).
inline const cplx forward_prefactor = 1.0 / sqrt_4pi_i;

/// Prefactor of the backward (t - tau < 0) kernel at the origin. With the principal
/// branch 1/sqrt(4*pi*i*(t - tau)) = exp(i*pi/4)/sqrt(4*pi*(tau - t)) = i/sqrt(4*pi*i).
inline const cplx backward_prefactor = cplx(0.0, 1.0) / sqrt_4pi_i;

}  // namespace pointnls
