#include "pointnls_io/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "pointnls/classifier.hpp"
#include "pointnls/ground_state.hpp"
#include "pointnls/types.hpp"

namespace pointnls::io {

namespace {
double param(const std::map<std::string, double>& m, const std::string& k, double fallback) {
  const auto it = m.find(k);
  return it == m.end() ? fallback : it->second;
}
}  // namespace

std::vector<std::string> oracle_names() { return {"exponents", "gaussian", "linear_gaussian", "standing_wave"}; }

nlohmann::json oracle(const std::string& name, const std::map<std::string, double>& params) {
  const double p = param(params, "p", 5.0);
  if (name == "standing_wave") {
    const auto g = ground_state(p);
    nlohmann::json j{{"p", p}, {"abs_q", g.amplitude}, {"mass", g.mass}, {"grad_norm", g.grad_norm},
                     {"energy", g.energy}};
    if (g.threshold) j["threshold"] = *g.threshold;
    return j;
  }
  if (name == "linear_gaussian") {
    // unit Gaussian: q(t) = (1 + 4 i t)^{-1/2}
    const double t = param(params, "t", 1.0);
    const cplx q = 1.0 / std::sqrt(cplx(1.0, 4.0 * t));
    return {{"t", t}, {"re_q", q.real()}, {"im_q", q.imag()}, {"abs_q", std::abs(q)}};
  }
  if (name == "gaussian") {
    const double A = param(params, "A", 1.0);
    const double m = A * A * std::sqrt(pi / 2.0);
    nlohmann::json j{{"A", A}, {"p", p}, {"mass", m}, {"grad_sq", m},
                     {"energy", 0.5 * m - std::pow(A, p + 1.0) / (p + 1.0)}};
    if (p > 3.0) {
      const auto c = classify(InitialDatum::gaussian({A, 1.0, 0.0, 0.0}), p);
      j["me_product"] = c.me_product;
      j["eta0"] = c.eta0;
      j["verdict"] = to_string(c.verdict);
    }
    return j;
  }
  if (name == "exponents") {
    const auto e = exponents(p);
    return {{"p", p}, {"sigma_c", e.sigma_c}, {"q", e.q}, {"q_tilde", e.q_tilde}};
  }
  throw std::invalid_argument("unknown oracle '" + name + "'");
}

}  // namespace pointnls::io
