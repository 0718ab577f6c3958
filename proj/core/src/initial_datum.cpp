#include "pointnls/initial_datum.hpp"

#include <cmath>
#include <stdexcept>

namespace pointnls {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double ground_amplitude(double p) { return std::pow(2.0, 1.0 / (p - 1.0)); }

}  // namespace

InitialDatum::InitialDatum(Kind kind, cplx gain) : kind_(std::move(kind)), gain_(gain) {
  if (!std::isfinite(gain.real()) || !std::isfinite(gain.imag()))
    throw std::invalid_argument("InitialDatum: gain must be finite");
  const double g2 = std::norm(gain);
  std::visit(overloaded{
                 [&](const GaussianPacket& g) {
                   if (!(g.width > 0.0)) throw std::invalid_argument("InitialDatum: Gaussian width must be positive");
                   const double alpha = 1.0 / (g.width * g.width);
                   const double k = 0.5 * g.velocity;
                   mass_ = g2 * g.amplitude * g.amplitude * std::sqrt(pi / (2.0 * alpha));
                   grad_sq_ = mass_ * (alpha + k * k);
                 },
                 [&](const GroundStateProfile& s) {
                   if (!(s.p > 1.0)) throw std::invalid_argument("InitialDatum: ground state needs p > 1");
                   if (!(s.dilation > 0.0)) throw std::invalid_argument("InitialDatum: dilation must be positive");
                   const double a2 = ground_amplitude(s.p) * ground_amplitude(s.p);
                   mass_ = g2 * a2 / s.dilation;
                   grad_sq_ = g2 * a2 * s.dilation;
                 },
                 [&](const SampledProfile& s) {
                   if (s.values.size() != s.grid.size())
                     throw std::invalid_argument("InitialDatum: sample count does not match the grid");
                   // Exact norms of the piecewise-linear interpolant.
                   const double h = s.grid.dx();
                   double m = 0.0, d = 0.0;
                   for (std::size_t i = 0; i + 1 < s.values.size(); ++i) {
                     const cplx a = s.values[i], b = s.values[i + 1];
                     m += (std::norm(a) + std::real(a * std::conj(b)) + std::norm(b)) / 3.0;
                     d += std::norm(b - a);
                   }
                   mass_ = g2 * m * h;
                   grad_sq_ = g2 * d / h;
                 },
             },
             kind_);
  if (!std::isfinite(mass_) || !std::isfinite(grad_sq_))
    throw std::invalid_argument("InitialDatum: datum is not in H1 (non-finite norms)");
}

InitialDatum InitialDatum::gaussian(const GaussianPacket& g, cplx gain) { return InitialDatum(g, gain); }

InitialDatum InitialDatum::ground_state(double p, cplx gain, double dilation) {
  return InitialDatum(GroundStateProfile{p, dilation}, gain);
}

InitialDatum InitialDatum::sampled(SpatialGrid grid, std::vector<cplx> values) {
  return InitialDatum(SampledProfile{grid, std::move(values)}, 1.0);
}

InitialDatum InitialDatum::zero() { return gaussian(GaussianPacket{0.0, 1.0, 0.0, 0.0}); }

cplx InitialDatum::value(double x) const {
  return gain_ * std::visit(overloaded{
                                [&](const GaussianPacket& g) -> cplx {
                                  const double y = (x - g.center) / g.width;
                                  return g.amplitude * std::exp(-y * y) * std::polar(1.0, 0.5 * g.velocity * x);
                                },
                                [&](const GroundStateProfile& s) -> cplx {
                                  return ground_amplitude(s.p) * std::exp(-s.dilation * std::abs(x));
                                },
                                [&](const SampledProfile& s) -> cplx {
                                  const double r = x / s.grid.dx() + static_cast<double>(s.grid.origin());
                                  if (r < 0.0 || r > static_cast<double>(s.grid.size() - 1)) return 0.0;
                                  const auto i = std::min(static_cast<std::size_t>(r), s.grid.size() - 2);
                                  const double f = r - static_cast<double>(i);
                                  return (1.0 - f) * s.values[i] + f * s.values[i + 1];
                                },
                            },
                            kind_);
}

std::optional<cplx> InitialDatum::fourier(double xi) const {
  return std::visit(overloaded{
                        [&](const GaussianPacket& g) -> std::optional<cplx> {
                          const double alpha = 1.0 / (g.width * g.width);
                          const double d = xi - 0.5 * g.velocity;
                          return gain_ * g.amplitude * std::polar(1.0, -d * g.center) * std::sqrt(pi / alpha) *
                                 std::exp(-d * d / (4.0 * alpha));
                        },
                        [&](const GroundStateProfile& s) -> std::optional<cplx> {
                          const double b = s.dilation;
                          return gain_ * ground_amplitude(s.p) * 2.0 * b / (b * b + xi * xi);
                        },
                        [&](const SampledProfile&) -> std::optional<cplx> { return std::nullopt; },
                    },
                    kind_);
}

double InitialDatum::energy(double p) const {
  return 0.5 * grad_sq_ - std::pow(std::abs(origin_value()), p + 1.0) / (p + 1.0);
}

InitialDatum InitialDatum::rotated(double theta) const {
  return InitialDatum(kind_, gain_ * std::polar(1.0, theta));
}

InitialDatum InitialDatum::conjugated() const {
  return std::visit(overloaded{
                        [&](const GaussianPacket& g) {
                          GaussianPacket c = g;
                          c.velocity = -g.velocity;
                          return InitialDatum(c, std::conj(gain_));
                        },
                        [&](const GroundStateProfile& s) { return InitialDatum(s, std::conj(gain_)); },
                        [&](const SampledProfile& s) {
                          SampledProfile c = s;
                          for (auto& v : c.values) v = std::conj(v);
                          return InitialDatum(c, std::conj(gain_));
                        },
                    },
                    kind_);
}

InitialDatum InitialDatum::scaled(double lambda, double p) const {
  if (!(lambda > 0.0)) throw std::invalid_argument("InitialDatum::scaled: lambda must be positive");
  if (!(p > 1.0)) throw std::invalid_argument("InitialDatum::scaled: p must exceed 1");
  const double amp = std::pow(lambda, 1.0 / (p - 1.0));
  return std::visit(overloaded{
                        [&](const GaussianPacket& g) {
                          GaussianPacket c = g;
                          c.width = g.width / lambda;
                          c.center = g.center / lambda;
                          c.velocity = g.velocity * lambda;
                          return InitialDatum(c, gain_ * amp);
                        },
                        [&](const GroundStateProfile& s) {
                          GroundStateProfile c = s;
                          c.dilation = s.dilation * lambda;
                          return InitialDatum(c, gain_ * amp);
                        },
                        [&](const SampledProfile& s) {
                          SampledProfile c{SpatialGrid::from_nodes(s.grid.half_nodes(), s.grid.dx() / lambda),
                                           s.values};
                          return InitialDatum(c, gain_ * amp);
                        },
                    },
                    kind_);
}

FieldSnapshot InitialDatum::sample(const SpatialGrid& grid) const {
  FieldSnapshot s{grid, std::vector<cplx>(grid.size()), 0.0};
  for (std::size_t i = 0; i < grid.size(); ++i) s.values[i] = value(grid.x(i));
  return s;
}

}  // namespace pointnls
