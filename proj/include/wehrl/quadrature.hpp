#pragma once

// Product quadrature on the sphere for integrals of the form
//   ∫ dΩ/4π f(θ, φ)
// Gauss-Legendre in u = cos θ times the uniform trapezoid rule in φ.

#include <memory>
#include <vector>

namespace wehrl {

struct QuadratureSpec {
  int n_theta = 32;
  int n_phi = 64;
  // Refinement tolerance for non-polynomial integrands.
  double tol = 1e-9;

  void validate() const;

  // Largest half-angle trigonometric degree D (as in cos^a(θ/2) sin^b(θ/2)
  // e^{i k φ} with a + b <= D, |k| <= D) integrated exactly.
  int exact_half_angle_degree() const;

  // Smallest spec that integrates half-angle degree D exactly:
  // n_theta >= D/2 + 1, n_phi >= D + 1.
  static QuadratureSpec exact_for(int half_angle_degree, double tol = 1e-9);
};

struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;  // sum to 2
};

// Cached; thread-safe.
std::shared_ptr<const GaussLegendreRule> gauss_legendre(int n);

// Flattened node set. weights sum to 1 (they already include the 1/4π).
struct SphereGrid {
  int n_theta = 0;
  int n_phi = 0;
  std::vector<double> cos_half;   // cos(θ/2) per theta node
  std::vector<double> sin_half;   // sin(θ/2) per theta node
  std::vector<double> theta_weight;  // per theta node, sums to 1
  std::vector<double> phi;        // per phi node
  double phi_weight = 0;          // 1 / n_phi

  static SphereGrid build(const QuadratureSpec& spec);
  std::size_t size() const { return static_cast<std::size_t>(n_theta) * n_phi; }
};

}  // namespace wehrl
