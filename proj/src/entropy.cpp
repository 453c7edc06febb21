#include "wehrl/entropy.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include <Eigen/Eigenvalues>

#include "wehrl/coherent.hpp"
#include "wehrl/errors.hpp"
#include "wehrl/kernels.hpp"
#include "wehrl/repcore.hpp"

namespace wehrl {

double von_neumann(const DensityMatrix& rho) { return shannon_entropy(SpectrumVector::of(rho.matrix())); }

double povm_entropy(const DensityMatrix& rho, const std::vector<CMatrix>& effects) {
  const int d = rho.spin().dim();
  if (effects.empty()) throw DomainError("empty POVM");
  CMatrix total = CMatrix::Zero(d, d);
  for (const CMatrix& e : effects) {
    if (e.rows() != d || e.cols() != d) throw DomainError("POVM effect has wrong shape");
    if ((e - e.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw DomainError("POVM effect is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(e, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) throw DomainError("POVM effect is not positive semidefinite");
    total += e;
  }
  if ((total - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10)
    throw DomainError("POVM effects do not sum to the identity");
  double h = 0.0;
  for (const CMatrix& e : effects) {
    const double p = std::real((rho.matrix() * e).trace());
    if (p > 0) h -= p * std::log(p);
  }
  return h;
}

namespace {

constexpr int kMaxThetaNodes = 4096;

WehrlResult wehrl_from_factors(const HusimiFactors& f, const QuadratureSpec& quad) {
  quad.validate();
  const double scale = f.spin.dim();
  QuadratureSpec spec = quad;
  // The Husimi function has φ-frequencies up to 2l; never sample below that.
  spec.n_phi = std::max(spec.n_phi, 2 * f.spin.twice() + 1);
  double prev = scale * sphere_average(f, SphereGrid::build(spec), Integrand::entropy());
  // Convergence is not monotone near Husimi zeros: two coarse grids can agree
  // while both are off, so require two consecutive small changes.
  double prev_change = std::numeric_limits<double>::infinity();
  while (true) {
    QuadratureSpec next = spec;
    next.n_theta *= 2;
    next.n_phi *= 2;
    if (next.n_theta > kMaxThetaNodes)
      throw ConvergenceError("Wehrl quadrature did not reach tol " + std::to_string(quad.tol) + " by n_theta=" +
                             std::to_string(spec.n_theta));
    const double value = scale * sphere_average(f, SphereGrid::build(next), Integrand::entropy());
    const double change = std::abs(value - prev);
    if (change < quad.tol && prev_change < quad.tol) return {value, next, change};
    prev_change = change;
    prev = value;
    spec = next;
  }
}

}  // namespace

WehrlResult wehrl_adaptive(const DensityMatrix& rho, const QuadratureSpec& quad) {
  return wehrl_from_factors(HusimiFactors::from(rho), quad);
}

WehrlResult wehrl_adaptive(const PureState& psi, const QuadratureSpec& quad) {
  return wehrl_from_factors(HusimiFactors::from(psi), quad);
}

double wehrl_entropy(const DensityMatrix& rho, const QuadratureSpec& quad) { return wehrl_adaptive(rho, quad).value; }
double wehrl_entropy(const PureState& psi, const QuadratureSpec& quad) { return wehrl_adaptive(psi, quad).value; }

double wehrl_fixed(const PureState& psi, const QuadratureSpec& quad) {
  return psi.spin().dim() * sphere_average(HusimiFactors::from(psi), SphereGrid::build(quad), Integrand::entropy());
}

double wehrl_stellar(const PureState& psi, const QuadratureSpec& quad) {
  const SpinLabel spin = psi.spin();
  const int n = spin.twice();
  if (n == 0) return 0.0;
  const StellarRoots roots = stellar_roots(psi);
  for (size_t i = 0; i < roots.roots.size(); ++i)
    for (size_t j = i + 1; j < roots.roots.size(); ++j)
      if (geodesic_angle(roots.roots[i], roots.roots[j]) < kStellarClusterAngle) return wehrl_adaptive(psi, quad).value;
  std::vector<Eigen::Vector3d> w;
  for (const auto& r : roots.roots) w.push_back(r.unit_vector());

  // K from ∫ Q = 1/(2l+1); the root product has half-angle degree 2n.
  const SphereGrid grid = SphereGrid::build(QuadratureSpec::exact_for(2 * n));
  double avg = 0.0;
  for (int i = 0; i < grid.n_theta; ++i) {
    const double c = grid.cos_half[i], s = grid.sin_half[i];
    const double ct = c * c - s * s, st = 2 * c * s;
    double row = 0.0;
    for (int k = 0; k < grid.n_phi; ++k) {
      const Eigen::Vector3d u(st * std::cos(grid.phi[k]), st * std::sin(grid.phi[k]), ct);
      double prod = 1.0;
      for (const auto& v : w) prod *= 0.5 * (1.0 + u.dot(v));
      row += prod;
    }
    avg += grid.theta_weight[i] * row * grid.phi_weight;
  }
  const double log_k = -std::log((n + 1.0) * avg);

  std::vector<double> harmonic(n + 2, 0.0);
  for (int a = 1; a <= n + 1; ++a) harmonic[a] = harmonic[a - 1] + 1.0 / a;
  double sum = 0.0;
  for (const auto& r : roots.roots) {
    const CVector v = rotation_matrix(spin, r).adjoint() * psi.amplitudes();
    // index k <-> m = l - k, so l + m = n - k
    for (int k = 0; k <= n; ++k) sum += std::norm(v(k)) * (harmonic[n + 1] - harmonic[n - k]);
  }
  return -log_k + sum;
}

double coherent_wehrl(SpinLabel spin) { return spin.value() * 2.0 / (spin.twice() + 1.0); }

ChordalData chordal_data(const StellarRoots& roots, double scale) {
  ChordalData out;
  const auto& r = roots.roots;
  for (size_t i = 0; i < r.size(); ++i)
    for (size_t j = i + 1; j < r.size(); ++j)
      out.values.push_back(scale * (r[i].unit_vector() - r[j].unit_vector()).squaredNorm());
  return out;
}

double wehrl_closed(SpinLabel spin, const ChordalData& chordal) {
  const auto& v = chordal.values;
  if (spin.twice() == 2) {
    if (v.size() != 1) throw DomainError("spin-1 closed form takes one chordal distance");
    const double mu = v[0];
    const double inv_c = 1.0 - 0.5 * mu;
    if (!(inv_c > 0)) throw DomainError("1/c = " + std::to_string(inv_c) + " <= 0: chordal convention violated");
    const double c = 1.0 / inv_c;
    return 2.0 / 3.0 + c * (0.5 * mu + inv_c * std::log(inv_c));
  }
  if (spin.twice() == 3) {
    if (v.size() != 3) throw DomainError("spin-3/2 closed form takes three chordal distances");
    const double e = v[0], mu = v[1], nu = v[2];
    const double s1 = (e + mu + nu) / 3.0;
    const double s2 = (e * mu + e * nu + mu * nu) / 6.0;
    const double inv_c = 1.0 - s1;
    if (!(inv_c > 0)) throw DomainError("1/c = " + std::to_string(inv_c) + " <= 0: chordal convention violated");
    const double c = 1.0 / inv_c;
    return 0.75 + c * (s1 - s2 + inv_c * std::log(inv_c));
  }
  throw DomainError("closed-form Wehrl entropy is only available for spin 1 and 3/2");
}

double coherent_renyi_moment(SpinLabel spin, int n) { return (spin.twice() + 1.0) / (double(n) * spin.twice() + 1.0); }

double renyi_wehrl_moment(const DensityMatrix& rho, int n, const QuadratureSpec& quad) {
  if (n < 1) throw DomainError("Rényi order must be >= 1");
  quad.validate();
  const int needed = 2 * n * rho.spin().twice();
  if (quad.exact_half_angle_degree() < needed)
    throw PreconditionError("Rényi moment of order " + std::to_string(n) + " needs half-angle degree " +
                            std::to_string(needed) + ", quadrature provides " +
                            std::to_string(quad.exact_half_angle_degree()));
  return rho.spin().dim() * sphere_average(HusimiFactors::from(rho), SphereGrid::build(quad), Integrand::power_of(n));
}

namespace {

// Applies m to tensor factor `mode` of a vector in (C^d)^{⊗n}; mode 0 is the
// most significant index.
CVector apply_on_mode(const CVector& v, const CMatrix& m, int d, int n, int mode) {
  long inner = 1;
  for (int i = mode + 1; i < n; ++i) inner *= d;
  const long outer = v.size() / (inner * d);
  CVector out = CVector::Zero(v.size());
  for (long o = 0; o < outer; ++o) {
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        const cplx w = m(a, b);
        if (w == cplx(0.0)) continue;
        const long dst = (o * d + a) * inner;
        const long src = (o * d + b) * inner;
        for (long i = 0; i < inner; ++i) out(dst + i) += w * v(src + i);
      }
    }
  }
  return out;
}

// Orthonormal basis of the maximal-spin component of [l]^{⊗n}, obtained by
// repeatedly lowering |l,l>^{⊗n} with the total L-.
std::vector<CVector> max_spin_basis(SpinLabel spin, int n) {
  const int d = spin.dim();
  long size = 1;
  for (int i = 0; i < n; ++i) size *= d;
  const CMatrix lminus = generators(spin).lminus;
  std::vector<CVector> basis;
  CVector v = CVector::Zero(size);
  v(0) = 1.0;
  basis.push_back(v);
  for (int k = 1; k <= n * spin.twice(); ++k) {
    CVector next = CVector::Zero(size);
    for (int mode = 0; mode < n; ++mode) next += apply_on_mode(basis.back(), lminus, d, n, mode);
    next /= next.norm();
    basis.push_back(std::move(next));
  }
  return basis;
}

double symmetric_trace(const std::vector<CVector>& basis, const CMatrix& rho, int d, int n) {
  double t = 0.0;
  for (const CVector& v : basis) {
    CVector w = v;
    for (int mode = 0; mode < n; ++mode) w = apply_on_mode(w, rho, d, n, mode);
    t += std::real(v.dot(w));
  }
  return t;
}

}  // namespace

double renyi_wehrl_projector(const DensityMatrix& rho, int n) {
  if (n < 1) throw DomainError("Rényi order must be >= 1");
  const SpinLabel spin = rho.spin();
  const int d = spin.dim();
  double size = 1;
  for (int i = 0; i < n; ++i) size *= d;
  if (size > 1e5)
    throw ResourceError("projector route needs (2l+1)^n = " + std::to_string(static_cast<long>(size)) +
                        " > 1e5 amplitudes");
  if (n == 1) return 1.0;

  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const std::vector<CVector>>> cache;
  std::shared_ptr<const std::vector<CVector>> basis;
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find({spin.twice(), n}); it != cache.end()) basis = it->second;
  }
  if (!basis) {
    auto b = std::make_shared<const std::vector<CVector>>(max_spin_basis(spin, n));
    std::lock_guard<std::mutex> lock(mutex);
    basis = cache.emplace(std::make_pair(spin.twice(), n), std::move(b)).first->second;
  }
  // (2nl+1) ∫ dΩ/4π |Ω><Ω|^{⊗n} is the projector onto spin nl.
  return (spin.twice() + 1.0) / (n * spin.twice() + 1.0) * symmetric_trace(*basis, rho.matrix(), d, n);
}

double renyi_wehrl_entropy(double moment, int n) {
  if (n < 2) throw DomainError("Rényi-Wehrl entropy needs order >= 2");
  if (!(moment > 0)) throw DomainError("Rényi moment must be positive");
  return std::log(moment) / (1.0 - n);
}

}  // namespace wehrl
