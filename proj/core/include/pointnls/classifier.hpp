#pragma once

#include <string>

#include "pointnls/initial_datum.hpp"

namespace pointnls {

enum class Verdict { GlobalScattersExpected, BlowUpExpected, AboveThresholdIndeterminate };

std::string to_string(Verdict v);

struct ClassifierConfig {
  /// Small-data proxy in the H^{sigma_c}-dot norm of psi_0. Heuristic metadata only.
  double delta_sd = 0.1;
  /// Relative band around me_product = threshold and eta0 = 1 treated as the boundary.
  double boundary_tol = 1e-9;
};

struct ClassificationResult {
  double p;
  double mass;
  double grad_sq;
  double energy;
  double me_product;  // M^{(1-sc)/sc} E
  double threshold;   // same for phi_0
  double eta0;
  Verdict verdict;
  double sigma_c_norm;  // ||psi_0||_{H^{sigma_c}-dot}
  double delta_sd;
  bool small_data;
};

/// Mass-energy threshold comparison; negative energy forces BlowUpExpected.
/// Throws std::domain_error for p <= 3.
ClassificationResult classify(const InitialDatum& datum, double p, const ClassifierConfig& cfg = {});

/// ||psi_0||_{H^s-dot} = (int |xi|^{2s} |psi_0_hat|^2 dxi / (2 pi))^{1/2}, 0 <= s < 1.
/// Closed-form transforms are integrated numerically; sampled data use the DFT engine.
double homogeneous_norm(const InitialDatum& datum, double s);

}  // namespace pointnls
