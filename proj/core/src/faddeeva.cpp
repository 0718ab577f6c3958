#include "pointnls/faddeeva.hpp"

#include <array>
#include <cmath>

namespace pointnls {
namespace {

constexpr int kTerms = 48;
constexpr double kContinuedFractionRadius = 8.0;

struct WeidemanTable {
  double L = 0.0;
  std::array<double, kTerms> coeff{};  // highest degree first

  WeidemanTable() {
    const int M = 2 * kTerms;
    const int M2 = 2 * M;
    L = std::sqrt(kTerms / std::sqrt(2.0));
    // Samples of exp(-t^2)(L^2 + t^2) at t = L tan(theta/2), theta = k*pi/M, stored
    // in FFT order (k = 0 first, negative k wrapped to the top).
    std::array<double, 2 * 2 * kTerms> f{};
    for (int i = 0; i < M2; ++i) {
      const int k = i < M ? i : i - M2;
      if (k == -M) {
        f[i] = 0.0;
        continue;
      }
      const double t = L * std::tan(0.5 * k * pi / M);
      f[i] = std::exp(-t * t) * (L * L + t * t);
    }
    for (int n = 1; n <= kTerms; ++n) {
      double acc = 0.0;
      for (int j = 0; j < M2; ++j) acc += f[j] * std::cos(2.0 * pi * j * n / M2);
      coeff[kTerms - n] = acc / M2;
    }
  }
};

const WeidemanTable& table() {
  static const WeidemanTable t;
  return t;
}

cplx weideman(cplx z) {
  const auto& tab = table();
  const cplx iz(-z.imag(), z.real());
  const cplx denom = tab.L - iz;
  const cplx Z = (tab.L + iz) / denom;
  cplx p = 0.0;
  for (double c : tab.coeff) p = p * Z + c;
  return 2.0 * p / (denom * denom) + (1.0 / std::sqrt(pi)) / denom;
}

cplx continued_fraction(cplx z) {
  const double r = std::abs(z);
  const int depth = r < 12.0 ? 24 : (r < 30.0 ? 12 : 6);
  cplx tail = 0.0;
  for (int k = depth; k >= 1; --k) tail = (0.5 * k) / (z - tail);
  return cplx(0.0, 1.0 / std::sqrt(pi)) / (z - tail);
}

cplx upper_half_plane(cplx z) {
  if (std::abs(z) >= kContinuedFractionRadius) return continued_fraction(z);
  return weideman(z);
}

}  // namespace

cplx faddeeva(cplx z) {
  if (z.imag() >= 0.0) return upper_half_plane(z);
  return 2.0 * std::exp(-z * z) - upper_half_plane(-z);
}

cplx erfc_complex(cplx z) {
  const cplx iz(-z.imag(), z.real());
  if (iz.imag() >= 0.0) return std::exp(-z * z) * upper_half_plane(iz);
  // erfc(z) = 2 - erfc(-z), and -z maps iz into the upper half plane.
  return 2.0 - std::exp(-z * z) * upper_half_plane(-iz);
}

}  // namespace pointnls
