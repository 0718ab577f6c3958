#include "pointnls/virial.hpp"

#include <cmath>
#include <stdexcept>

namespace pointnls {

double VirialWeight::chi(double r) {
  if (r <= 1.0) return r * r;
  if (r >= 2.0) return 0.0;
  const double s = r - 1.0;
  return 1.0 + s * (2.0 + s * (1.0 + s * (-25.0 + s * (34.0 - 13.0 * s))));
}

double VirialWeight::chi1(double r) {
  if (r <= 1.0) return 2.0 * r;
  if (r >= 2.0) return 0.0;
  const double s = r - 1.0;
  return 2.0 + s * (2.0 + s * (-75.0 + s * (136.0 - 65.0 * s)));
}

double VirialWeight::chi2(double r) {
  if (r <= 1.0) return 2.0;
  if (r >= 2.0) return 0.0;
  const double s = r - 1.0;
  return 2.0 + s * (-150.0 + s * (408.0 - 260.0 * s));
}

// chi''' jumps at r = 1 and r = 2; there it returns the mean of the one-sided limits,
// which keeps the trapezoid rule second order when a knot falls on a grid node.
double VirialWeight::chi3(double r) {
  if (r == 1.0) return -75.0;
  if (r == 2.0) return -57.0;
  if (r < 1.0 || r > 2.0) return 0.0;
  const double s = r - 1.0;
  return -150.0 + s * (816.0 - 780.0 * s);
}

double VirialWeight::chi4(double r) {
  if (r < 1.0 || r >= 2.0) return 0.0;
  return 816.0 - 1560.0 * (r - 1.0);
}

VirialWeight::VirialWeight(double R) : R_(R), support_(2.0 * R) {
  if (!(R > 0.0)) throw std::invalid_argument("VirialWeight: R must be positive");
  a_ = [R](double x) { return R * R * chi(std::abs(x) / R); };
  a2_ = [R](double x) { return chi2(std::abs(x) / R); };
  a3_ = [R](double x) { return (x < 0.0 ? -1.0 : 1.0) * chi3(std::abs(x) / R) / R; };
}

VirialWeight::VirialWeight(std::function<double(double)> a, std::function<double(double)> a2,
                           std::function<double(double)> a3, double support)
    : R_(0.5 * support), support_(support), a_(std::move(a)), a2_(std::move(a2)), a3_(std::move(a3)) {}

bool VirialWeight::admissible(double h, double tol) const {
  const double am2 = a_(-2.0 * h), am1 = a_(-h), a0 = a_(0.0), ap1 = a_(h), ap2 = a_(2.0 * h);
  const double d1 = (ap1 - am1) / (2.0 * h);
  const double d3 = (ap2 - 2.0 * ap1 + 2.0 * am1 - am2) / (2.0 * h * h * h);
  return std::abs(a0) <= tol && std::abs(d1) <= tol && std::abs(d3) <= tol;
}

namespace {
double weighted_mass(const FieldSnapshot& s, const VirialWeight& w) {
  double acc = 0.0;
  const std::size_t N = s.values.size();
  for (std::size_t i = 0; i < N; ++i) {
    const double c = (i == 0 || i + 1 == N) ? 0.5 : 1.0;
    acc += c * w.a(s.grid.x(i)) * std::norm(s.values[i]);
  }
  return acc * s.dx();
}
}  // namespace

VirialTerms virial_residual(const FieldSnapshot& before, const FieldSnapshot& mid, const FieldSnapshot& after,
                            const VirialWeight& weight, double p, std::optional<cplx> origin_mid,
                            bool include_point_term) {
  if (!weight.admissible()) throw std::invalid_argument("virial_residual: weight violates a(0)=a'(0)=a'''(0)=0");
  for (const FieldSnapshot* s : {&before, &after})
    if (s->values.size() != mid.values.size() || s->dx() != mid.dx())
      throw std::invalid_argument("virial_residual: snapshots must share a grid");
  if (mid.grid.half_width() + 1e-12 < weight.support())
    throw std::invalid_argument("virial_residual: grid does not cover the support of the weight");
  const double dt1 = mid.t - before.t, dt2 = after.t - mid.t;
  if (!(dt1 > 0.0) || std::abs(dt1 - dt2) > 1e-9 * dt1)
    throw std::invalid_argument("virial_residual: snapshots must be equally spaced in time");

  VirialTerms v{};
  v.lhs = (weighted_mass(after, weight) - 2.0 * weighted_mass(mid, weight) + weighted_mass(before, weight)) /
          (dt1 * dt1);

  const KinkGradient g = kink_gradient(mid);
  const std::size_t o = mid.grid.origin();
  const std::size_t N = mid.values.size();
  const double h = mid.dx();
  double grad = 0.0, fourth = 0.0;
  // Each half line separately with its own one-sided slope at the origin.
  for (std::size_t i = 0; i < N; ++i) {
    const double x = mid.grid.x(i);
    const double c = (i == 0 || i + 1 == N) ? 0.5 : 1.0;
    if (i == o) {
      for (const cplx d : {g.left, g.right}) {
        grad += 0.5 * weight.a2(x) * std::norm(d);
        fourth += 0.5 * weight.a3(x) * 2.0 * std::real(std::conj(mid.values[i]) * d);
      }
      continue;
    }
    grad += c * weight.a2(x) * std::norm(g.values[i]);
    fourth += c * weight.a3(x) * 2.0 * std::real(std::conj(mid.values[i]) * g.values[i]);
  }
  v.gradient = 4.0 * grad * h;
  v.fourth = fourth * h;
  const double q = std::abs(origin_mid ? *origin_mid : mid.origin_value());
  v.point = include_point_term ? -2.0 * weight.a2(0.0) * std::pow(q, p + 1.0) : 0.0;
  v.rhs = v.gradient + v.point + v.fourth;
  const double scale = std::abs(v.gradient) + std::abs(v.point) + std::abs(v.fourth);
  v.residual = scale > 0.0 ? std::abs(v.lhs - v.rhs) / scale : std::abs(v.lhs);
  return v;
}

}  // namespace pointnls
