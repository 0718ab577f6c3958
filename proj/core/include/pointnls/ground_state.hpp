#pragma once

#include <optional>

namespace pointnls {

struct CriticalExponents {
  double p;
  double sigma_c;  // 1/2 - 1/(p-1)
  double q;        // 2(p-1)
  double q_tilde;  // 2(p-1)/p
  bool l2_critical;
};
CriticalExponents exponents(double p);

struct GroundStateData {
  double p;
  double amplitude;  // 2^{1/(p-1)}
  double mass;       // 2^{2/(p-1)}
  double grad_norm;  // ||phi_0'||_{L2} = 2^{1/(p-1)}
  double energy;     // 2^{2/(p-1)} (p-3) / (2(p+1))
  std::optional<double> threshold_exponent;  // (1 - sigma_c)/sigma_c, p > 3
  std::optional<double> threshold;           // M^{(1-sigma_c)/sigma_c} E, p > 3
};
GroundStateData ground_state(double p);

/// phi_0(x) = 2^{1/(p-1)} e^{-|x|}.
double ground_state_profile(double p, double x);

struct StationaryResidual {
  double interior;  // max |phi'' - phi| over sample points x != 0, centered differences
  double jump;      // |phi'(0+) - phi'(0-) + |phi(0)|^{p-1} phi(0)| from the exact one-sided slopes
  double value() const { return interior > jump ? interior : jump; }
};
StationaryResidual stationary_residual(double p, double dx = 1e-3);

}  // namespace pointnls
