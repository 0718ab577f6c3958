#include "pointnls/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pointnls {

SpatialGrid::SpatialGrid(double half_width, double dx) {
  if (!(dx > 0.0) || !std::isfinite(dx)) throw std::invalid_argument("SpatialGrid: dx must be positive");
  if (!(half_width > 0.0)) throw std::invalid_argument("SpatialGrid: half_width must be positive");
  const double r = half_width / dx;
  const double n = std::round(r);
  if (n < 1.0 || std::abs(r - n) > 1e-9 * std::max(1.0, r))
    throw std::invalid_argument("SpatialGrid: half_width must be a positive multiple of dx");
  dx_ = dx;
  n_ = static_cast<std::size_t>(n);
}

SpatialGrid SpatialGrid::from_nodes(std::size_t half_nodes, double dx) {
  if (half_nodes == 0) throw std::invalid_argument("SpatialGrid: need at least one node per side");
  return SpatialGrid(static_cast<double>(half_nodes) * dx, dx);
}

double FieldSnapshot::boundary_ratio() const {
  double peak = 0.0;
  for (const cplx& v : values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  return std::max(std::abs(values.front()), std::abs(values.back())) / peak;
}

KinkGradient kink_gradient(const FieldSnapshot& snap) {
  const std::size_t N = snap.values.size();
  const std::size_t o = snap.grid.origin();
  if (N != snap.grid.size()) throw std::invalid_argument("kink_gradient: values do not match the grid");
  if (o < 2) throw std::invalid_argument("kink_gradient: need at least 2 nodes per side");
  const auto& v = snap.values;
  const double h = snap.dx();
  KinkGradient g;
  g.values.resize(N);
  for (std::size_t i = 1; i + 1 < N; ++i) g.values[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
  g.values[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
  g.values[N - 1] = (3.0 * v[N - 1] - 4.0 * v[N - 2] + v[N - 3]) / (2.0 * h);
  g.right = (-3.0 * v[o] + 4.0 * v[o + 1] - v[o + 2]) / (2.0 * h);
  g.left = (3.0 * v[o] - 4.0 * v[o - 1] + v[o - 2]) / (2.0 * h);
  g.values[o] = 0.5 * (g.left + g.right);
  return g;
}

double trapezoid_norm_sq(const std::vector<cplx>& f, double dx) {
  if (f.empty()) return 0.0;
  double acc = 0.5 * (std::norm(f.front()) + std::norm(f.back()));
  for (std::size_t i = 1; i + 1 < f.size(); ++i) acc += std::norm(f[i]);
  return acc * dx;
}

H1Norms sobolev_h1(const FieldSnapshot& snap) {
  const double mass = trapezoid_norm_sq(snap.values, snap.dx());
  const KinkGradient g = kink_gradient(snap);
  const std::size_t o = snap.grid.origin();
  const std::size_t N = g.values.size();
  const double h = snap.dx();
  double left = 0.5 * (std::norm(g.values[0]) + std::norm(g.left));
  for (std::size_t i = 1; i < o; ++i) left += std::norm(g.values[i]);
  double right = 0.5 * (std::norm(g.right) + std::norm(g.values[N - 1]));
  for (std::size_t i = o + 1; i + 1 < N; ++i) right += std::norm(g.values[i]);
  const double grad = (left + right) * h;
  return {mass, grad, std::sqrt(mass + grad)};
}

double jump_defect(const FieldSnapshot& snap, double p) { return jump_defect(snap, p, snap.origin_value()); }

double jump_defect(const FieldSnapshot& snap, double p, cplx origin) {
  if (snap.grid.origin() < 3) throw std::invalid_argument("jump_defect: need at least 3 nodes on each side");
  const KinkGradient g = kink_gradient(snap);
  return std::abs(g.right - g.left + std::pow(std::abs(origin), p - 1.0) * origin);
}

}  // namespace pointnls
