#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "pointnls/field.hpp"
#include "pointnls/types.hpp"

namespace pointnls {

/// A * exp(-(x - x0)^2 / width^2) * exp(i v x / 2); v is the group velocity.
struct GaussianPacket {
  double amplitude = 1.0;
  double width = 1.0;
  double center = 0.0;
  double velocity = 0.0;
};

/// phi_0(dilation * x) with phi_0 = 2^{1/(p-1)} exp(-|x|).
struct GroundStateProfile {
  double p = 5.0;
  double dilation = 1.0;
};

/// Samples on a symmetric grid, linearly interpolated, zero outside the grid.
struct SampledProfile {
  SpatialGrid grid;
  std::vector<cplx> values;
};

/// Initial profile psi_0 = gain * profile. Mass and gradient norm are computed at
/// construction; non-finite values are rejected.
class InitialDatum {
 public:
  using Kind = std::variant<GaussianPacket, GroundStateProfile, SampledProfile>;

  static InitialDatum gaussian(const GaussianPacket& g, cplx gain = 1.0);
  static InitialDatum ground_state(double p, cplx gain = 1.0, double dilation = 1.0);
  static InitialDatum sampled(SpatialGrid grid, std::vector<cplx> values);
  static InitialDatum zero();

  const Kind& kind() const { return kind_; }
  cplx gain() const { return gain_; }

  cplx value(double x) const;
  cplx origin_value() const { return value(0.0); }
  /// psi_0_hat(xi) = int psi_0(x) e^{-i xi x} dx, when a closed form exists.
  std::optional<cplx> fourier(double xi) const;

  double mass() const { return mass_; }
  double grad_sq() const { return grad_sq_; }
  /// E = grad_sq / 2 - |psi_0(0)|^{p+1} / (p+1).
  double energy(double p) const;
  bool is_zero() const { return mass_ == 0.0; }

  /// e^{i theta} psi_0.
  InitialDatum rotated(double theta) const;
  /// conj(psi_0).
  InitialDatum conjugated() const;
  /// lambda^{1/(p-1)} psi_0(lambda x).
  InitialDatum scaled(double lambda, double p) const;
  /// Samples on a grid.
  FieldSnapshot sample(const SpatialGrid& grid) const;

 private:
  InitialDatum(Kind kind, cplx gain);
  Kind kind_;
  cplx gain_;
  double mass_ = 0.0;
  double grad_sq_ = 0.0;
};

}  // namespace pointnls
