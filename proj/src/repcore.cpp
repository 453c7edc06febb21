#include "wehrl/repcore.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "wehrl/errors.hpp"

namespace wehrl {

namespace {

// sqrt(l(l+1) - m(m+1)): matrix element of L+ on |l,m>.
double raise_factor(double l, double m) { return std::sqrt(std::max(0.0, l * (l + 1) - m * (m + 1))); }
// sqrt(l(l+1) - m(m-1)): matrix element of L- on |l,m>.
double lower_factor(double l, double m) { return std::sqrt(std::max(0.0, l * (l + 1) - m * (m - 1))); }

CMatrix exp_i_hermitian(const CMatrix& h, double angle) {
  // exp(-i angle H) for Hermitian H.
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const auto& v = es.eigenvectors();
  CVector phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) phases(i) = std::polar(1.0, -angle * es.eigenvalues()(i));
  return v * phases.asDiagonal() * v.adjoint();
}

CVector lz_phases(SpinLabel spin, double angle) {
  CVector p(spin.dim());
  for (int k = 0; k < spin.dim(); ++k) p(k) = std::polar(1.0, -angle * spin.m_at(k));
  return p;
}

}  // namespace

Generators generators(SpinLabel spin) {
  const int d = spin.dim();
  const double l = spin.value();
  Generators g;
  g.lz = CMatrix::Zero(d, d);
  g.lplus = CMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    const double m = spin.m_at(k);
    g.lz(k, k) = m;
    // |l,m> at index k is raised to |l,m+1> at index k-1.
    if (k > 0) g.lplus(k - 1, k) = raise_factor(l, m);
  }
  g.lminus = g.lplus.adjoint();
  g.l1 = 0.5 * (g.lplus + g.lminus);
  g.l2 = (g.lplus - g.lminus) / cplx(0.0, 2.0);
  g.l3 = g.lz;
  return g;
}

CouplingTable::CouplingTable(SpinLabel l1, SpinLabel l2, SpinLabel total) : l1_(l1), l2_(l2), total_(total) {
  const int t1 = l1.twice(), t2 = l2.twice(), tJ = total.twice();
  if (tJ > t1 + t2 || tJ < std::abs(t1 - t2) || (t1 + t2 - tJ) % 2 != 0)
    throw DomainError("coupling " + l1.to_string() + " x " + l2.to_string() + " -> " + total.to_string() +
                      " violates the triangle rule");
  const double j1 = l1.value(), j2 = l2.value(), J = total.value();
  const int d1 = l1.dim();
  auto m1_of = [&](int k1) { return l1.m_at(k1); };

  coeff_.assign(total.dim(), RVector::Zero(d1));

  // Highest weight M = J. m1 runs from l1 (k1 = 0) down to max(-l1, J - l2).
  {
    RVector& top = coeff_[0];
    const int k1_last = std::min(d1 - 1, static_cast<int>(std::lround(j1 - (J - j2))));
    // Recursion upward in m1, i.e. from k1_last toward k1 = 0:
    // C(y) = -C(y-1) * raise(l1, y-1) / raise(l2, J-y).
    top(k1_last) = 1.0;
    for (int k1 = k1_last - 1; k1 >= 0; --k1) {
      const double y = m1_of(k1);
      top(k1) = -top(k1 + 1) * raise_factor(j1, y - 1) / raise_factor(j2, J - y);
      if (std::abs(top(k1)) > 1e100) top /= std::abs(top(k1));
    }
    top /= top.norm();
    if (top(0) < 0) top = -top;
  }

  // Lower: |J, M-1> ∝ sum_y [C_M(y+1) lower(l1, y+1) + C_M(y) lower(l2, M-y)] |y, M-1-y>.
  for (int kM = 1; kM < total.dim(); ++kM) {
    const double M = J - (kM - 1);
    const RVector& prev = coeff_[kM - 1];
    RVector& cur = coeff_[kM];
    for (int k1 = 0; k1 < d1; ++k1) {
      const double y = m1_of(k1);
      const double m2 = M - 1 - y;
      if (std::abs(m2) > j2 + 1e-9) continue;
      double v = 0;
      if (k1 > 0) v += prev(k1 - 1) * lower_factor(j1, y + 1);
      if (std::abs(M - y) <= j2 + 1e-9) v += prev(k1) * lower_factor(j2, M - y);
      cur(k1) = v;
    }
    cur /= cur.norm();
  }
}

double CouplingTable::operator()(int k1, int k2, int kM) const {
  const int t1 = l1_.twice(), t2 = l2_.twice(), tJ = total_.twice();
  if ((t1 - 2 * k1) + (t2 - 2 * k2) != tJ - 2 * kM) return 0.0;
  return coeff_[kM](k1);
}

CMatrix CouplingTable::isometry() const {
  const int d1 = l1_.dim(), d2 = l2_.dim();
  const int t1 = l1_.twice(), t2 = l2_.twice(), tJ = total_.twice();
  CMatrix v = CMatrix::Zero(d1 * d2, total_.dim());
  for (int kM = 0; kM < total_.dim(); ++kM) {
    for (int k1 = 0; k1 < d1; ++k1) {
      const int twice_m2 = (tJ - 2 * kM) - (t1 - 2 * k1);
      if (std::abs(twice_m2) > t2) continue;
      const int k2 = (t2 - twice_m2) / 2;
      v(k1 * d2 + k2, kM) = coeff_[kM](k1);
    }
  }
  return v;
}

double clebsch_gordan(SpinLabel l1, SpinLabel l2, SpinLabel total, int twice_m1, int twice_m2, int twice_M) {
  auto check = [](SpinLabel l, int twice_m, const char* name) {
    if (std::abs(twice_m) > l.twice() || (l.twice() - twice_m) % 2 != 0)
      throw DomainError(std::string("magnetic number ") + name + " out of range for spin " + l.to_string());
  };
  check(l1, twice_m1, "m1");
  check(l2, twice_m2, "m2");
  check(total, twice_M, "M");
  CouplingTable table(l1, l2, total);
  if (twice_m1 + twice_m2 != twice_M) return 0.0;
  return table(l1.index_of_twice_m(twice_m1), l2.index_of_twice_m(twice_m2), total.index_of_twice_m(twice_M));
}

CMatrix symmetric_projector(SpinLabel l, SpinLabel j) {
  const CMatrix v = CouplingTable(l, j, l + j).isometry();
  return v * v.adjoint();
}

CMatrix rotation_matrix(SpinLabel spin, const SphereDirection& direction) {
  return rotation_matrix(spin, direction.phi, direction.theta, 0.0);
}

CMatrix rotation_matrix(SpinLabel spin, double alpha, double beta, double gamma) {
  const Generators g = generators(spin);
  const CMatrix small_d = exp_i_hermitian(g.l2, beta);
  return lz_phases(spin, alpha).asDiagonal() * small_d * lz_phases(spin, gamma).asDiagonal();
}

PureState rotate(const PureState& psi, const SphereDirection& direction) {
  CVector out = rotation_matrix(psi.spin(), direction) * psi.amplitudes();
  return PureState::normalized(psi.spin(), std::move(out));
}

DensityMatrix rotate(const DensityMatrix& rho, const SphereDirection& direction) {
  const CMatrix u = rotation_matrix(rho.spin(), direction);
  return DensityMatrix(rho.spin(), hermitian_part(u * rho.matrix() * u.adjoint()));
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace wehrl
