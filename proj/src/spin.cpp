#include "wehrl/spin.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "wehrl/errors.hpp"

namespace wehrl {

namespace {
constexpr double kStateTol = 1e-12;
}

SpinLabel::SpinLabel(int twice_l) : twice_l_(twice_l) {
  if (twice_l < 0) throw DomainError("spin label must be non-negative, got twice_l=" + std::to_string(twice_l));
}

SpinLabel SpinLabel::from_value(double l) {
  const double twice = 2.0 * l;
  const double rounded = std::round(twice);
  if (std::abs(twice - rounded) > 1e-9 || rounded < 0)
    throw DomainError("not a non-negative half-integer: " + std::to_string(l));
  return SpinLabel(static_cast<int>(rounded));
}

SpinLabel SpinLabel::parse(std::string_view text) {
  std::string s(text);
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      size_t used = 0;
      const int num = std::stoi(s.substr(0, slash), &used);
      if (used != slash) throw DomainError("bad spin label '" + s + "'");
      const std::string den_str = s.substr(slash + 1);
      const int den = std::stoi(den_str, &used);
      if (used != den_str.size()) throw DomainError("bad spin label '" + s + "'");
      if (den == 1) return SpinLabel(2 * num);
      if (den == 2) return SpinLabel(num);
      throw DomainError("spin label denominator must be 1 or 2: '" + s + "'");
    }
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw DomainError("bad spin label '" + s + "'");
    return from_value(v);
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const DomainError*>(&e)) throw;
    throw DomainError("bad spin label '" + s + "'");
  }
}

std::string SpinLabel::to_string() const {
  if (twice_l_ % 2 == 0) return std::to_string(twice_l_ / 2);
  return std::to_string(twice_l_) + "/2";
}

SphereDirection SphereDirection::normalized(double theta, double phi) {
  // Reflect theta into [0, pi] (crossing a pole flips phi by pi).
  theta = std::fmod(theta, 2.0 * kPi);
  if (theta < 0) theta += 2.0 * kPi;
  if (theta > kPi) {
    theta = 2.0 * kPi - theta;
    phi += kPi;
  }
  phi = std::fmod(phi, 2.0 * kPi);
  if (phi < 0) phi += 2.0 * kPi;
  if (phi >= 2.0 * kPi) phi = 0.0;
  return {theta, phi};
}

SphereDirection SphereDirection::from_unit_vector(const Eigen::Vector3d& n) {
  const double r = n.norm();
  if (r == 0.0) throw DomainError("zero vector has no direction");
  const double z = std::clamp(n.z() / r, -1.0, 1.0);
  const double theta = std::acos(z);
  const double phi = (n.x() == 0.0 && n.y() == 0.0) ? 0.0 : std::atan2(n.y(), n.x());
  return normalized(theta, phi);
}

Eigen::Vector3d SphereDirection::unit_vector() const {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

SphereDirection SphereDirection::antipode() const { return normalized(kPi - theta, phi + kPi); }

double geodesic_angle(const SphereDirection& a, const SphereDirection& b) {
  const Eigen::Vector3d u = a.unit_vector();
  const Eigen::Vector3d v = b.unit_vector();
  // atan2 form stays accurate for nearly equal and nearly antipodal pairs.
  return std::atan2(u.cross(v).norm(), u.dot(v));
}

PureState::PureState(SpinLabel spin, CVector amplitudes) : spin_(spin), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != spin_.dim())
    throw DomainError("amplitude count " + std::to_string(amplitudes_.size()) + " does not match dimension " +
                      std::to_string(spin_.dim()));
  if (std::abs(amplitudes_.norm() - 1.0) > kStateTol)
    throw DomainError("pure state is not normalized (norm " + std::to_string(amplitudes_.norm()) + ")");
}

PureState PureState::normalized(SpinLabel spin, CVector amplitudes) {
  const double n = amplitudes.norm();
  if (n == 0.0 || !std::isfinite(n)) throw DomainError("cannot normalize a zero vector");
  amplitudes /= n;
  return PureState(spin, std::move(amplitudes));
}

PureState PureState::basis(SpinLabel spin, int index) {
  CVector v = CVector::Zero(spin.dim());
  v(index) = 1.0;
  return PureState(spin, std::move(v));
}

DensityMatrix::DensityMatrix(SpinLabel spin, CMatrix matrix) : spin_(spin), matrix_(std::move(matrix)) {
  const int d = spin_.dim();
  if (matrix_.rows() != d || matrix_.cols() != d) throw DomainError("density matrix has wrong shape");
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kStateTol)
    throw DomainError("density matrix is not Hermitian");
  if (std::abs(matrix_.trace() - cplx(1.0)) > kStateTol) throw DomainError("density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(matrix_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kStateTol) throw DomainError("density matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::pure(const PureState& psi) {
  CMatrix m = psi.amplitudes() * psi.amplitudes().adjoint();
  // Exact Hermitian symmetrization of rounding.
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityMatrix(psi.spin(), std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(SpinLabel spin) {
  return DensityMatrix(spin, CMatrix::Identity(spin.dim(), spin.dim()) / double(spin.dim()));
}

DensityMatrix DensityMatrix::mixture(SpinLabel spin, const std::vector<PureState>& states,
                                     const std::vector<double>& weights) {
  if (states.size() != weights.size() || states.empty()) throw DomainError("mixture needs matching states/weights");
  CMatrix m = CMatrix::Zero(spin.dim(), spin.dim());
  double total = 0;
  for (size_t i = 0; i < states.size(); ++i) {
    if (weights[i] < 0) throw DomainError("negative mixture weight");
    if (!(states[i].spin() == spin)) throw DomainError("mixture of different spins");
    m += weights[i] * states[i].amplitudes() * states[i].amplitudes().adjoint();
    total += weights[i];
  }
  m /= total;
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityMatrix(spin, std::move(m));
}

double fidelity(const PureState& a, const PureState& b) {
  if (!(a.spin() == b.spin())) throw DomainError("fidelity between different spins");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

}  // namespace wehrl
