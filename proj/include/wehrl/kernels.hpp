#pragma once

// Data-parallel Husimi kernels on a sphere grid.
//
// Every kernel comes in two flavours: a plain serial loop (the reference
// implementation used by tests) and an OpenMP version over theta rows. Both
// accumulate one partial sum per theta row and reduce the rows serially in
// index order, so the two agree bit-for-bit for any thread count.

#include <vector>

#include "wehrl/quadrature.hpp"
#include "wehrl/spin.hpp"

namespace wehrl {

// rho = sum_r weight_r |v_r><v_r| with weight_r > 0.
struct HusimiFactors {
  SpinLabel spin;
  std::vector<double> weights;
  std::vector<CVector> vectors;

  static HusimiFactors from(const PureState& psi);
  // Eigen-decomposition; eigenvalues at or below 1e-15 are dropped.
  static HusimiFactors from(const DensityMatrix& rho);
};

struct Integrand {
  enum class Kind { kIdentity, kEntropy, kPower };
  Kind kind = Kind::kIdentity;
  int power = 1;

  static Integrand identity() { return {Kind::kIdentity, 1}; }
  // -x ln x, with 0 ln 0 := 0
  static Integrand entropy() { return {Kind::kEntropy, 1}; }
  static Integrand power_of(int n) { return {Kind::kPower, n}; }

  double operator()(double x) const;
};

// sqrt(C(2l, k)) cos^{2l-k}(θ/2) sin^k(θ/2) for k = 0..2l.
void coherent_magnitudes(SpinLabel spin, double cos_half, double sin_half, double* out);

// ∫ dΩ/4π f(ρ(Ω)) over the grid.
double sphere_average_serial(const HusimiFactors& rho, const SphereGrid& grid, Integrand f);
double sphere_average(const HusimiFactors& rho, const SphereGrid& grid, Integrand f);

// Husimi values at every node (theta-major). Used by tests and benchmarks.
std::vector<double> husimi_on_grid_serial(const HusimiFactors& rho, const SphereGrid& grid);
std::vector<double> husimi_on_grid(const HusimiFactors& rho, const SphereGrid& grid);

}  // namespace wehrl
