#pragma once

#include <functional>
#include <optional>

#include "pointnls/field.hpp"

namespace pointnls {

/// Cutoff weight a(x) = R^2 chi(|x|/R): chi(r) = r^2 on [0,1], the quintic
/// 1 + 2s + s^2 - 25s^3 + 34s^4 - 13s^5 (s = r - 1) on [1,2], and 0 beyond.
/// chi, chi', chi'' are continuous; chi''' jumps at r = 1 and r = 2.
class VirialWeight {
 public:
  explicit VirialWeight(double R);
  /// Arbitrary weight given by a, a'' and a'''. Used to exercise the admissibility check.
  VirialWeight(std::function<double(double)> a, std::function<double(double)> a2, std::function<double(double)> a3,
               double support);

  static double chi(double r);
  static double chi1(double r);
  static double chi2(double r);
  static double chi3(double r);
  static double chi4(double r);

  double R() const { return R_; }
  /// a vanishes for |x| >= support.
  double support() const { return support_; }
  double a(double x) const { return a_(x); }
  double a2(double x) const { return a2_(x); }
  double a3(double x) const { return a3_(x); }

  /// a(0) = a'(0) = a'''(0) = 0 checked by finite differences of a with step h.
  bool admissible(double h = 1e-3, double tol = 1e-8) const;

 private:
  double R_ = 0.0;
  double support_ = 0.0;
  std::function<double(double)> a_, a2_, a3_;
};

struct VirialTerms {
  double lhs;        // second central difference of z(t) = int a |psi|^2
  double gradient;   // 4 int a'' |psi_x|^2
  double point;      // -2 a''(0) |psi(0)|^{p+1}
  double fourth;     // -int a'''' |psi|^2, evaluated as int a''' d_x |psi|^2
  double rhs;
  double residual;   // |lhs - rhs| / (|gradient| + |point| + |fourth|), 0 when everything vanishes
};

/// Local virial identity at the middle of three snapshots with equal spacing.
/// `include_point_term = false` drops the nonlinear point term (linear runs).
VirialTerms virial_residual(const FieldSnapshot& before, const FieldSnapshot& mid, const FieldSnapshot& after,
                            const VirialWeight& weight, double p, std::optional<cplx> origin_mid = {},
                            bool include_point_term = true);

}  // namespace pointnls
