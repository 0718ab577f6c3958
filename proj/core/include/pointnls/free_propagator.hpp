#pragma once

#include <vector>

#include "pointnls/field.hpp"
#include "pointnls/initial_datum.hpp"
#include "pointnls/time_grid.hpp"

namespace pointnls {

struct OriginDrive {
  TimeGrid grid;
  std::vector<cplx> values;  // [e^{i t d_x^2} psi_0](0) at every node
};

/// [e^{i t d_x^2} psi_0](x) for any real t.
///   Gaussian: closed form.
///   GroundState: closed form in the Faddeeva function.
///   Sampled: the linear interpolant integrated exactly against the kernel
///            exp(i (x-y)^2/(4t)) / sqrt(4 pi i t) (Fresnel moments).
cplx free_evolution(const InitialDatum& datum, double x, double t);

/// Ground-state building block: [e^{i t d_x^2} e^{-|.|}](x).
cplx free_exponential(double x, double t);

OriginDrive propagate_at_origin(const InitialDatum& datum, const TimeGrid& grid);

FieldSnapshot propagate_on_grid(const InitialDatum& datum, double t, const SpatialGrid& grid, unsigned threads = 1);

}  // namespace pointnls
