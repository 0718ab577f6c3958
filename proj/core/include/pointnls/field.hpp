#pragma once

#include <cstddef>
#include <vector>

#include "pointnls/types.hpp"

namespace pointnls {

/// Symmetric grid x_i = (i - n) dx, i = 0..2n, with the origin at index n.
class SpatialGrid {
 public:
  /// n = round(half_width / dx); half_width must be a multiple of dx to 1e-9 relative.
  SpatialGrid(double half_width, double dx);
  static SpatialGrid from_nodes(std::size_t half_nodes, double dx);

  double dx() const { return dx_; }
  std::size_t half_nodes() const { return n_; }
  std::size_t size() const { return 2 * n_ + 1; }
  std::size_t origin() const { return n_; }
  double half_width() const { return static_cast<double>(n_) * dx_; }
  double x(std::size_t i) const { return (static_cast<double>(i) - static_cast<double>(n_)) * dx_; }

 private:
  SpatialGrid() = default;
  double dx_ = 0.0;
  std::size_t n_ = 0;
};

struct FieldSnapshot {
  SpatialGrid grid;
  std::vector<cplx> values;
  double t = 0.0;

  double dx() const { return grid.dx(); }
  cplx origin_value() const { return values[grid.origin()]; }
  /// max(|psi(-L)|, |psi(L)|) / max |psi|; 0 for the zero field.
  double boundary_ratio() const;
};

/// Nodal derivative of a field with a kink at the origin: centered differences in the
/// interior of each half line, second-order one-sided differences at 0+, 0- and at the
/// outer ends. `values[origin]` holds the average of the two one-sided values.
struct KinkGradient {
  std::vector<cplx> values;
  cplx left;   // psi_x(0-)
  cplx right;  // psi_x(0+)
};
KinkGradient kink_gradient(const FieldSnapshot& snap);

/// Trapezoid integral of |f|^2 over the grid.
double trapezoid_norm_sq(const std::vector<cplx>& f, double dx);

struct H1Norms {
  double mass;
  double grad_sq;
  double h1;
};

/// Mass, int |psi_x|^2 (each half line separately, kink-aware gradient) and the H1 norm.
H1Norms sobolev_h1(const FieldSnapshot& snap);

/// |D+ - D- + |psi(0)|^{p-1} psi(0)| with second-order one-sided differences D+-.
/// `origin` overrides the grid sample at 0 when given. Needs 3 nodes per side.
double jump_defect(const FieldSnapshot& snap, double p);
double jump_defect(const FieldSnapshot& snap, double p, cplx origin);

}  // namespace pointnls
