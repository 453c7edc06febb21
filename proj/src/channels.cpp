#include "wehrl/channels.hpp"

#include <cmath>

#include "wehrl/errors.hpp"
#include "wehrl/repcore.hpp"

namespace wehrl {

namespace {

double projection_weight(SpinLabel l, SpinLabel j) { return (l.twice() + 1.0) / ((l + j).twice() + 1.0); }

ChannelOutput make_output(SpinLabel spin_out, CMatrix m) {
  m = hermitian_part(m);
  SpectrumVector s = SpectrumVector::of(m);
  return {spin_out, std::move(m), std::move(s)};
}

}  // namespace

double projection_shift(SpinLabel l, SpinLabel j) { return std::log(projection_weight(l, j)); }

ChannelOutput projection_channel(const DensityMatrix& rho, SpinLabel j) {
  const SpinLabel l = rho.spin();
  const int d1 = l.dim(), d2 = j.dim();
  if (long(d1) * d2 > kMaxProductDim)
    throw ResourceError("projection channel on " + std::to_string(long(d1) * d2) +
                        "-dimensional product exceeds guard " + std::to_string(kMaxProductDim));
  const SpinLabel total = l + j;
  const CMatrix iso = CouplingTable(l, j, total).isometry();
  const int dout = total.dim();
  // Column kM of the isometry viewed as a d1 x d2 matrix X_kM; then
  // <kM'| ρ ⊗ 1 |kM> = tr(X_kM'^† ρ X_kM).
  std::vector<CMatrix> cols(dout), rho_cols(dout);
  for (int k = 0; k < dout; ++k) {
    cols[k] = Eigen::Map<const CMatrix>(iso.col(k).data(), d2, d1).transpose();
    rho_cols[k] = rho.matrix() * cols[k];
  }
  CMatrix out(dout, dout);
  for (int a = 0; a < dout; ++a)
    for (int b = 0; b < dout; ++b) out(a, b) = (cols[a].conjugate().cwiseProduct(rho_cols[b])).sum();
  out *= projection_weight(l, j);
  return make_output(total, std::move(out));
}

std::vector<CMatrix> projection_kraus(SpinLabel l, SpinLabel j) {
  const SpinLabel total = l + j;
  const CouplingTable cg(l, j, total);
  const double amp = std::sqrt(projection_weight(l, j));
  std::vector<CMatrix> ops;
  for (int kj = 0; kj < j.dim(); ++kj) {
    CMatrix a = CMatrix::Zero(total.dim(), l.dim());
    for (int kout = 0; kout < total.dim(); ++kout)
      for (int k1 = 0; k1 < l.dim(); ++k1) a(kout, k1) = amp * cg(k1, kj, kout);
    ops.push_back(std::move(a));
  }
  return ops;
}

ChannelOutput apply_kraus(const std::vector<CMatrix>& kraus, const CMatrix& rho, SpinLabel spin_out) {
  CMatrix out = CMatrix::Zero(spin_out.dim(), spin_out.dim());
  for (const CMatrix& a : kraus) out.noalias() += a * rho * a.adjoint();
  return make_output(spin_out, std::move(out));
}

CMatrix projection_dual_gram(const PureState& psi, SpinLabel j) {
  const SpinLabel l = psi.spin();
  const SpinLabel total = l + j;
  const CouplingTable cg(l, j, total);
  // w.col(M)(kout) = <l+j, kout | ψ ⊗ |j, M>>
  CMatrix w = CMatrix::Zero(total.dim(), j.dim());
  for (int kj = 0; kj < j.dim(); ++kj)
    for (int k1 = 0; k1 < l.dim(); ++k1) {
      const int kout = k1 + kj;  // M_total = m1 + m2 in index form
      w(kout, kj) += cg(k1, kj, kout) * psi[k1];
    }
  CMatrix g = projection_weight(l, j) * (w.adjoint() * w);
  // g(M', M) = w_{M'}^† w_M
  return hermitian_part(g);
}

double projection_entropy(const DensityMatrix& rho, SpinLabel j) {
  return shannon_entropy(projection_channel(rho, j).spectrum);
}

double projection_entropy(const PureState& psi, SpinLabel j) {
  return shannon_entropy(SpectrumVector::of(projection_dual_gram(psi, j)));
}

ChannelOutput angular_channel(const DensityMatrix& rho) {
  const SpinLabel l = rho.spin();
  if (l.twice() < 1) throw DomainError("angular channel needs l >= 1/2");
  const Generators g = generators(l);
  CMatrix out = g.l1 * rho.matrix() * g.l1 + g.l2 * rho.matrix() * g.l2 + g.l3 * rho.matrix() * g.l3;
  out /= l.casimir();
  return make_output(l, std::move(out));
}

ChannelOutput angular_channel_ladder(const DensityMatrix& rho) {
  const SpinLabel l = rho.spin();
  if (l.twice() < 1) throw DomainError("angular channel needs l >= 1/2");
  const Generators g = generators(l);
  const CMatrix kp = g.lplus / std::sqrt(2.0);
  const CMatrix km = g.lminus / std::sqrt(2.0);
  CMatrix out =
      kp * rho.matrix() * kp.adjoint() + km * rho.matrix() * km.adjoint() + g.lz * rho.matrix() * g.lz;
  out /= l.casimir();
  return make_output(l, std::move(out));
}

CMatrix angular_gram(const PureState& psi) {
  const SpinLabel l = psi.spin();
  if (l.twice() < 1) throw DomainError("angular Gram matrix needs l >= 1/2");
  const Generators g = generators(l);
  const CMatrix* ops[3] = {&g.l1, &g.l2, &g.l3};
  CVector v[3];
  for (int i = 0; i < 3; ++i) v[i] = (*ops[i]) * psi.amplitudes();
  CMatrix gram(3, 3);
  // <ψ|L_i L_j|ψ> = (L_i ψ)^† (L_j ψ)
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) gram(i, k) = v[i].dot(v[k]);
  return hermitian_part(gram / l.casimir());
}

double angular_entropy(const PureState& psi) { return shannon_entropy(SpectrumVector::of(angular_gram(psi))); }

double angular_entropy(const DensityMatrix& rho) { return shannon_entropy(angular_channel(rho).spectrum); }

std::vector<double> coherent_angular_tuple(SpinLabel spin) {
  const double l = spin.value();
  return {l * l, l, 0.0};
}

double channel_covariance_defect(ChannelKind kind, const DensityMatrix& rho, const SphereDirection& direction,
                                 SpinLabel j) {
  return channel_covariance_defect(kind, rho, direction.phi, direction.theta, 0.0, j);
}

double channel_covariance_defect(ChannelKind kind, const DensityMatrix& rho, double alpha, double beta, double gamma,
                                 SpinLabel j) {
  const SpinLabel l = rho.spin();
  const CMatrix u_in = rotation_matrix(l, alpha, beta, gamma);
  const DensityMatrix rotated(l, hermitian_part(u_in * rho.matrix() * u_in.adjoint()));
  CMatrix lhs, rhs;
  if (kind == ChannelKind::kProjection) {
    const CMatrix u_out = rotation_matrix(l + j, alpha, beta, gamma);
    lhs = projection_channel(rotated, j).matrix;
    rhs = u_out * projection_channel(rho, j).matrix * u_out.adjoint();
  } else {
    lhs = angular_channel(rotated).matrix;
    rhs = u_in * angular_channel(rho).matrix * u_in.adjoint();
  }
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

}  // namespace wehrl
