#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pointnls/time_grid.hpp"
#include "pointnls/types.hpp"

namespace pointnls {

struct FracNormSpec {
  double mu = 0.0;               // in (-1/2, 1)
  double t_a = -INFINITY;        // window, clipped to the grid
  double t_b = INFINITY;
  double taper_fraction = 0.0;   // raised-cosine ramp on each edge, in [0, 0.5]
  std::size_t padding = 4;       // transform length >= padding * window length (power of two)
};

/// ||v||_{H^mu-dot} from uniform samples. Transform convention v_hat(w) = int v(t) e^{-iwt} dt,
/// approximated by spacing * DFT; the norm is (sum |w_m|^{2mu} |v_hat_m|^2 dw/(2 pi))^{1/2}.
/// The w = 0 cell uses the cell average of |w|^{2mu}, which keeps mu < 0 finite.
/// mu = 0 gives the discrete L2 norm to rounding.
double homogeneous_sobolev_norm(std::span<const cplx> samples, double spacing, double mu,
                                std::size_t padding = 4);

/// Windowed and tapered homogeneous norm of a time series on `grid`.
double frac_sobolev_norm(std::span<const cplx> samples, const TimeGrid& grid, const FracNormSpec& spec);

/// chi_[a,b] * samples (nodes with a <= t <= b are kept).
std::vector<cplx> hilbert_truncate(std::span<const cplx> samples, const TimeGrid& grid, double a, double b);

/// Multiplies by a raised-cosine ramp over `fraction` of the length at each end.
void apply_raised_cosine_taper(std::span<cplx> samples, double fraction);

}  // namespace pointnls
