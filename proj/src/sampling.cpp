#include "wehrl/sampling.hpp"

#include <cmath>

#include <Eigen/QR>

namespace wehrl {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 1));
}

CVector haar_vector(int dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = cplx(re, im);
  }
  return v / v.norm();
}

PureState haar_state(SpinLabel spin, Rng& rng) { return PureState::normalized(spin, haar_vector(spin.dim(), rng)); }

std::vector<PureState> haar_states(SpinLabel spin, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<PureState> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(haar_state(spin, rng));
  return out;
}

namespace {
CMatrix ginibre(int dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = cplx(re, im);
    }
  return g;
}
}  // namespace

CMatrix random_density(int dim, Rng& rng) {
  const CMatrix g = ginibre(dim, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

DensityMatrix random_density(SpinLabel spin, Rng& rng) {
  return DensityMatrix(spin, random_density(spin.dim(), rng));
}

CMatrix haar_unitary(int dim, Rng& rng, bool special) {
  Eigen::HouseholderQR<CMatrix> qr(ginibre(dim, rng));
  CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    const cplx d = r(i, i);
    q.col(i) *= d / std::abs(d);
  }
  if (special) {
    const cplx det = q.determinant();
    q *= std::pow(det, -1.0 / dim);
  }
  return q;
}

SphereDirection uniform_direction(Rng& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double u = 2.0 * uni(rng) - 1.0;
  const double phi = 2.0 * kPi * uni(rng);
  return SphereDirection::normalized(std::acos(u), phi);
}

}  // namespace wehrl
