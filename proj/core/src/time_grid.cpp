#include "pointnls/time_grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pointnls {

TimeGrid::TimeGrid(double t0, double dt, std::size_t n_steps) : t0_(t0), dt_(dt), n_steps_(n_steps) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("TimeGrid: dt must be positive");
  if (n_steps == 0) throw std::invalid_argument("TimeGrid: n_steps must be at least 1");
  if (!std::isfinite(t0)) throw std::invalid_argument("TimeGrid: t0 must be finite");
}

TimeGrid TimeGrid::covering(double t0, double dt, double horizon) {
  if (!(dt > 0.0)) throw std::invalid_argument("TimeGrid: dt must be positive");
  if (!(horizon > 0.0)) throw std::invalid_argument("TimeGrid: horizon must be positive");
  const double n = std::round(horizon / dt);
  if (n < 1.0 || n > 1e9) throw std::invalid_argument("TimeGrid: horizon/dt out of range");
  return TimeGrid(t0, dt, static_cast<std::size_t>(n));
}

std::size_t TimeGrid::index_of(double t) const {
  const double r = (t - t0_) / dt_;
  const double k = std::round(r);
  if (k < 0.0 || k > static_cast<double>(n_steps_) || std::abs(r - k) > 1e-6)
    throw std::out_of_range("TimeGrid: t = " + std::to_string(t) + " is not a grid node");
  return static_cast<std::size_t>(k);
}

}  // namespace pointnls
