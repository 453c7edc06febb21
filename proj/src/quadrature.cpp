#include "wehrl/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include <boost/math/special_functions/legendre.hpp>

#include "wehrl/errors.hpp"
#include "wehrl/spin.hpp"

namespace wehrl {

void QuadratureSpec::validate() const {
  if (n_theta < 1 || n_phi < 1) throw PreconditionError("quadrature node counts must be positive");
  if (!(tol > 0)) throw PreconditionError("quadrature tolerance must be positive");
}

int QuadratureSpec::exact_half_angle_degree() const { return std::min(2 * (n_theta - 1), n_phi - 1); }

QuadratureSpec QuadratureSpec::exact_for(int half_angle_degree, double tol) {
  QuadratureSpec s;
  s.n_theta = (half_angle_degree + 1) / 2 + 1;
  s.n_phi = half_angle_degree + 1;
  s.tol = tol;
  return s;
}

namespace {

GaussLegendreRule compute_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Nonnegative zeros, ascending; zero itself included for odd n.
  const std::vector<double> zeros = boost::math::legendre_p_zeros<double>(n);
  const int half = static_cast<int>(zeros.size());
  auto weight = [n](double x) {
    const double dp = boost::math::legendre_p_prime<double>(n, x);
    return 2.0 / ((1.0 - x * x) * dp * dp);
  };
  // Ascending order over [-1, 1].
  int idx = 0;
  for (int i = half - 1; i >= 0; --i) {
    if (zeros[i] == 0.0) continue;
    rule.nodes[idx] = -zeros[i];
    rule.weights[idx] = weight(zeros[i]);
    ++idx;
  }
  for (int i = 0; i < half; ++i) {
    rule.nodes[idx] = zeros[i];
    rule.weights[idx] = weight(zeros[i]);
    ++idx;
  }
  return rule;
}

}  // namespace

std::shared_ptr<const GaussLegendreRule> gauss_legendre(int n) {
  if (n < 1) throw PreconditionError("Gauss-Legendre order must be positive");
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const GaussLegendreRule>> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const GaussLegendreRule>(compute_rule(n));
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(n, rule).first->second;
}

SphereGrid SphereGrid::build(const QuadratureSpec& spec) {
  spec.validate();
  const auto rule = gauss_legendre(spec.n_theta);
  SphereGrid g;
  g.n_theta = spec.n_theta;
  g.n_phi = spec.n_phi;
  g.cos_half.resize(g.n_theta);
  g.sin_half.resize(g.n_theta);
  g.theta_weight.resize(g.n_theta);
  for (int i = 0; i < g.n_theta; ++i) {
    const double u = rule->nodes[i];
    // cos^2(θ/2) = (1+u)/2, sin^2(θ/2) = (1-u)/2
    g.cos_half[i] = std::sqrt(0.5 * (1.0 + u));
    g.sin_half[i] = std::sqrt(0.5 * (1.0 - u));
    g.theta_weight[i] = 0.5 * rule->weights[i];
  }
  g.phi.resize(g.n_phi);
  for (int k = 0; k < g.n_phi; ++k) g.phi[k] = 2.0 * kPi * k / g.n_phi;
  g.phi_weight = 1.0 / g.n_phi;
  return g;
}

}  // namespace wehrl
