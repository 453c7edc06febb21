#include "wehrl/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "wehrl/errors.hpp"
#include "wehrl/kernels.hpp"

namespace wehrl {

namespace {

double sqrt_binomial(int n, int k) {
  return std::exp(0.5 * (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

cplx eval_poly(const CVector& c, cplx z) {
  cplx acc = c(c.size() - 1);
  for (Eigen::Index p = c.size() - 2; p >= 0; --p) acc = acc * z + c(p);
  return acc;
}

cplx eval_poly_derivative(const CVector& c, cplx z) {
  if (c.size() < 2) return 0.0;
  cplx acc = double(c.size() - 1) * c(c.size() - 1);
  for (Eigen::Index p = c.size() - 2; p >= 1; --p) acc = acc * z + double(p) * c(p);
  return acc;
}

SphereDirection direction_from_stereo(cplx z) {
  const double theta = 2.0 * std::atan(std::abs(z));
  const double phi = std::abs(z) == 0.0 ? 0.0 : std::arg(z);
  return SphereDirection::normalized(theta, phi);
}

}  // namespace

PureState coherent_state(SpinLabel spin, const SphereDirection& direction) {
  const int d = spin.dim();
  std::vector<double> mags(d);
  coherent_magnitudes(spin, std::cos(0.5 * direction.theta), std::sin(0.5 * direction.theta), mags.data());
  CVector a(d);
  for (int k = 0; k < d; ++k) a(k) = mags[k] * std::polar(1.0, -spin.m_at(k) * direction.phi);
  // Norm is 1 up to rounding; renormalize so the invariant holds to the last bit.
  return PureState::normalized(spin, std::move(a));
}

double husimi(const DensityMatrix& rho, const SphereDirection& direction) {
  const CVector a = coherent_state(rho.spin(), direction).amplitudes();
  return std::real(a.dot(rho.matrix() * a));
}

double husimi(const PureState& psi, const SphereDirection& direction) {
  return std::norm(coherent_state(psi.spin(), direction).amplitudes().dot(psi.amplitudes()));
}

double overlap_sq(SpinLabel spin, const SphereDirection& a, const SphereDirection& b) {
  const double half = 0.5 * geodesic_angle(a, b);
  return std::pow(std::cos(half), 2 * spin.twice());
}

double completeness_defect(SpinLabel spin, const QuadratureSpec& quad) {
  quad.validate();
  const int needed = 2 * spin.twice();
  if (quad.exact_half_angle_degree() < needed)
    throw PreconditionError("completeness check for spin " + spin.to_string() + " needs half-angle degree " +
                            std::to_string(needed) + ", quadrature provides " +
                            std::to_string(quad.exact_half_angle_degree()));
  const SphereGrid grid = SphereGrid::build(quad);
  const int d = spin.dim();
  CMatrix acc = CMatrix::Zero(d, d);
  std::vector<double> mags(d);
  CVector a(d);
  for (int i = 0; i < grid.n_theta; ++i) {
    coherent_magnitudes(spin, grid.cos_half[i], grid.sin_half[i], mags.data());
    for (int k = 0; k < grid.n_phi; ++k) {
      for (int q = 0; q < d; ++q) a(q) = mags[q] * std::polar(1.0, -spin.m_at(q) * grid.phi[k]);
      acc.noalias() += (grid.theta_weight[i] * grid.phi_weight) * (a * a.adjoint());
    }
  }
  acc *= double(d);
  acc -= CMatrix::Identity(d, d);
  return acc.cwiseAbs().maxCoeff();
}

StellarRoots stellar_roots(const PureState& psi) { return stellar_roots(psi.spin(), psi.amplitudes()); }

StellarRoots stellar_roots(SpinLabel spin, const CVector& amplitudes) {
  const int n = spin.twice();
  if (amplitudes.size() != spin.dim()) throw DomainError("amplitude count does not match spin");
  if (amplitudes.norm() == 0.0) throw DomainError("zero vector has no stellar representation");
  StellarRoots out{spin, {}};
  if (n == 0) return out;

  // Coefficient of z^p, p = l + m = n - k.
  CVector c(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    c(n - k) = sign * sqrt_binomial(n, k) * amplitudes(k);
  }
  const double scale = c.cwiseAbs().maxCoeff();
  int degree = n;
  while (degree > 0 && std::abs(c(degree)) <= 1e-14 * scale) --degree;
  int zeros = 0;
  while (zeros < degree && std::abs(c(zeros)) <= 1e-14 * scale) ++zeros;

  for (int i = 0; i < zeros; ++i) out.roots.push_back(SphereDirection::north());
  const int reduced = degree - zeros;
  if (reduced > 0) {
    CVector poly = c.segment(zeros, reduced + 1) / c(degree);
    CMatrix companion = CMatrix::Zero(reduced, reduced);
    for (int i = 1; i < reduced; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < reduced; ++i) companion(i, reduced - 1) = -poly(i);
    Eigen::ComplexEigenSolver<CMatrix> es(companion, false);
    for (int i = 0; i < reduced; ++i) {
      cplx z = es.eigenvalues()(i);
      // One Newton polish, kept only if it reduces the residual.
      const cplx dp = eval_poly_derivative(poly, z);
      if (std::abs(dp) > 0.0) {
        const cplx candidate = z - eval_poly(poly, z) / dp;
        if (std::abs(eval_poly(poly, candidate)) < std::abs(eval_poly(poly, z))) z = candidate;
      }
      out.roots.push_back(direction_from_stereo(z));
    }
  }
  for (int i = degree; i < n; ++i) out.roots.push_back(SphereDirection::south());
  return out;
}

PureState state_from_roots(const StellarRoots& roots) {
  const int n = roots.spin.twice();
  if (static_cast<int>(roots.roots.size()) != n)
    throw DomainError("spin " + roots.spin.to_string() + " needs exactly " + std::to_string(n) + " roots");
  // prod_i (α_i z - β_i), α = cos(θ/2), β = sin(θ/2) e^{iφ}
  CVector c = CVector::Zero(n + 1);
  c(0) = 1.0;
  int deg = 0;
  for (const auto& r : roots.roots) {
    const cplx alpha = std::cos(0.5 * r.theta);
    const cplx beta = std::sin(0.5 * r.theta) * std::polar(1.0, r.phi);
    CVector next = CVector::Zero(n + 1);
    for (int p = 0; p <= deg; ++p) {
      next(p + 1) += alpha * c(p);
      next(p) -= beta * c(p);
    }
    c = next;
    ++deg;
  }
  CVector a(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    a(k) = sign * c(n - k) / sqrt_binomial(n, k);
  }
  return PureState::normalized(roots.spin, std::move(a));
}

double multiset_distance(const StellarRoots& a, const StellarRoots& b) {
  if (a.roots.size() != b.roots.size()) throw DomainError("root multisets differ in size");
  const size_t n = a.roots.size();
  if (n == 0) return 0.0;
  std::vector<size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  if (n <= 8) {
    double best = kPi;
    do {
      double worst = 0;
      for (size_t i = 0; i < n; ++i) worst = std::max(worst, geodesic_angle(a.roots[i], b.roots[perm[i]]));
      best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }
  std::vector<bool> used(n, false);
  double worst = 0;
  for (size_t i = 0; i < n; ++i) {
    double best = 10;
    size_t pick = 0;
    for (size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      const double d = geodesic_angle(a.roots[i], b.roots[j]);
      if (d < best) best = d, pick = j;
    }
    used[pick] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

CoherentFit closest_coherent(const PureState& psi) {
  constexpr int kGridTheta = 32;
  constexpr int kGridPhi = 64;
  constexpr int kMaxHalvings = 50;
  constexpr int kMaxMoves = 10000;

  auto value_at = [&](const Eigen::Vector3d& n) { return husimi(psi, SphereDirection::from_unit_vector(n)); };

  Eigen::Vector3d best_n = Eigen::Vector3d::UnitZ();
  double best = -1.0;
  for (int i = 0; i < kGridTheta; ++i) {
    const double theta = kPi * i / (kGridTheta - 1);
    for (int k = 0; k < kGridPhi; ++k) {
      const SphereDirection dir{theta, 2.0 * kPi * k / kGridPhi};
      const double v = husimi(psi, dir);
      if (v > best) {
        best = v;
        best_n = dir.unit_vector();
      }
    }
  }

  double step = kPi / (kGridTheta - 1);
  int halvings = 0;
  for (int moves = 0; moves < kMaxMoves && halvings < kMaxHalvings;) {
    // Tangent frame at the current point.
    const Eigen::Vector3d helper =
        std::abs(best_n.z()) < 0.9 ? Eigen::Vector3d::UnitZ() : Eigen::Vector3d::UnitX();
    const Eigen::Vector3d e1 = best_n.cross(helper).normalized();
    const Eigen::Vector3d e2 = best_n.cross(e1);
    bool improved = false;
    Eigen::Vector3d cand_best = best_n;
    double cand_val = best;
    for (const Eigen::Vector3d& e : {e1, Eigen::Vector3d(-e1), e2, Eigen::Vector3d(-e2)}) {
      const Eigen::Vector3d cand = (std::cos(step) * best_n + std::sin(step) * e).normalized();
      const double v = value_at(cand);
      if (v > cand_val) {
        cand_val = v;
        cand_best = cand;
        improved = true;
      }
    }
    if (improved) {
      best_n = cand_best;
      best = cand_val;
      ++moves;
    } else {
      step *= 0.5;
      ++halvings;
    }
  }
  return {SphereDirection::from_unit_vector(best_n), best};
}

}  // namespace wehrl
