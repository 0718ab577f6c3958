#pragma once

#include <cstddef>

namespace pointnls {

/// Uniform time grid, node k at t0 + k*dt for k = 0..n_steps.
class TimeGrid {
 public:
  TimeGrid(double t0, double dt, std::size_t n_steps);

  /// Grid starting at t0 that covers [t0, t0 + horizon] with step dt (rounded to nearest).
  static TimeGrid covering(double t0, double dt, double horizon);

  double t0() const { return t0_; }
  double dt() const { return dt_; }
  std::size_t n_steps() const { return n_steps_; }
  std::size_t size() const { return n_steps_ + 1; }
  double node(std::size_t k) const { return t0_ + static_cast<double>(k) * dt_; }
  double end() const { return node(n_steps_); }

  /// Index of the node at time t. Throws std::out_of_range if t is not a node.
  std::size_t index_of(double t) const;

 private:
  double t0_;
  double dt_;
  std::size_t n_steps_;
};

}  // namespace pointnls
