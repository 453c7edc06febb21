#include "wehrl/kernels.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace wehrl {

HusimiFactors HusimiFactors::from(const PureState& psi) {
  return HusimiFactors{psi.spin(), {1.0}, {psi.amplitudes()}};
}

HusimiFactors HusimiFactors::from(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix());
  HusimiFactors f{rho.spin(), {}, {}};
  for (Eigen::Index i = es.eigenvalues().size() - 1; i >= 0; --i) {
    const double w = es.eigenvalues()(i);
    if (w <= 1e-15) continue;
    f.weights.push_back(w);
    f.vectors.push_back(es.eigenvectors().col(i));
  }
  return f;
}

double Integrand::operator()(double x) const {
  switch (kind) {
    case Kind::kIdentity:
      return x;
    case Kind::kEntropy:
      return x > 0.0 ? -x * std::log(x) : 0.0;
    case Kind::kPower: {
      double r = 1.0;
      for (int i = 0; i < power; ++i) r *= x;
      return r;
    }
  }
  return 0.0;
}

void coherent_magnitudes(SpinLabel spin, double cos_half, double sin_half, double* out) {
  const int n = spin.twice();
  // sqrt(C(n, k)) built incrementally: C(n, k) = C(n, k-1) (n-k+1)/k
  double binom = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) binom *= double(n - k + 1) / k;
    out[k] = std::sqrt(binom) * std::pow(cos_half, n - k) * std::pow(sin_half, k);
  }
}

namespace {

struct PhaseTable {
  // e^{-i φ_k}
  std::vector<cplx> z;
  explicit PhaseTable(const SphereGrid& grid) : z(grid.n_phi) {
    for (int k = 0; k < grid.n_phi; ++k) z[k] = std::polar(1.0, -grid.phi[k]);
  }
};

// Husimi at one node. Up to a global phase,
// <Ω|v> = sum_k b_k(θ) v_k e^{-i k φ}, evaluated by Horner in z = e^{-iφ}.
inline double husimi_at(const HusimiFactors& rho, const std::vector<CVector>& scaled, cplx z) {
  double h = 0.0;
  const int d = rho.spin.dim();
  for (size_t r = 0; r < scaled.size(); ++r) {
    const CVector& c = scaled[r];
    cplx acc = c(d - 1);
    for (int k = d - 2; k >= 0; --k) acc = acc * z + c(k);
    h += rho.weights[r] * std::norm(acc);
  }
  return h;
}

void scale_row(const HusimiFactors& rho, const SphereGrid& grid, int row, std::vector<double>& mags,
               std::vector<CVector>& scaled) {
  coherent_magnitudes(rho.spin, grid.cos_half[row], grid.sin_half[row], mags.data());
  for (size_t r = 0; r < rho.vectors.size(); ++r)
    for (int k = 0; k < rho.spin.dim(); ++k) scaled[r](k) = mags[k] * rho.vectors[r](k);
}

double row_sum(const HusimiFactors& rho, const SphereGrid& grid, const PhaseTable& phases, int row, Integrand f,
               std::vector<double>& mags, std::vector<CVector>& scaled) {
  scale_row(rho, grid, row, mags, scaled);
  double s = 0.0;
  for (int k = 0; k < grid.n_phi; ++k) s += f(husimi_at(rho, scaled, phases.z[k]));
  return s * grid.phi_weight;
}

std::vector<CVector> scratch_vectors(const HusimiFactors& rho) {
  return std::vector<CVector>(rho.vectors.size(), CVector(rho.spin.dim()));
}

double reduce_rows(const SphereGrid& grid, const std::vector<double>& rows) {
  double total = 0.0;
  for (int i = 0; i < grid.n_theta; ++i) total += grid.theta_weight[i] * rows[i];
  return total;
}

}  // namespace

double sphere_average_serial(const HusimiFactors& rho, const SphereGrid& grid, Integrand f) {
  const PhaseTable phases(grid);
  std::vector<double> rows(grid.n_theta);
  std::vector<double> mags(rho.spin.dim());
  auto scaled = scratch_vectors(rho);
  for (int i = 0; i < grid.n_theta; ++i) rows[i] = row_sum(rho, grid, phases, i, f, mags, scaled);
  return reduce_rows(grid, rows);
}

double sphere_average(const HusimiFactors& rho, const SphereGrid& grid, Integrand f) {
  const PhaseTable phases(grid);
  std::vector<double> rows(grid.n_theta);
#pragma omp parallel
  {
    std::vector<double> mags(rho.spin.dim());
    auto scaled = scratch_vectors(rho);
#pragma omp for schedule(static)
    for (int i = 0; i < grid.n_theta; ++i) rows[i] = row_sum(rho, grid, phases, i, f, mags, scaled);
  }
  return reduce_rows(grid, rows);
}

std::vector<double> husimi_on_grid_serial(const HusimiFactors& rho, const SphereGrid& grid) {
  const PhaseTable phases(grid);
  std::vector<double> out(grid.size());
  std::vector<double> mags(rho.spin.dim());
  auto scaled = scratch_vectors(rho);
  for (int i = 0; i < grid.n_theta; ++i) {
    scale_row(rho, grid, i, mags, scaled);
    for (int k = 0; k < grid.n_phi; ++k) out[size_t(i) * grid.n_phi + k] = husimi_at(rho, scaled, phases.z[k]);
  }
  return out;
}

std::vector<double> husimi_on_grid(const HusimiFactors& rho, const SphereGrid& grid) {
  const PhaseTable phases(grid);
  std::vector<double> out(grid.size());
#pragma omp parallel
  {
    std::vector<double> mags(rho.spin.dim());
    auto scaled = scratch_vectors(rho);
#pragma omp for schedule(static)
    for (int i = 0; i < grid.n_theta; ++i) {
      scale_row(rho, grid, i, mags, scaled);
      for (int k = 0; k < grid.n_phi; ++k) out[size_t(i) * grid.n_phi + k] = husimi_at(rho, scaled, phases.z[k]);
    }
  }
  return out;
}

}  // namespace wehrl
