#pragma once

// Core value types for finite-dimensional SU(2) representations.
//
// Basis convention used everywhere: index k = 0..d-1 holds the component
// |l, m> with m = l - k, i.e. highest weight first.

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace wehrl {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

// Half-integer label stored as twice its value.
class SpinLabel {
 public:
  constexpr SpinLabel() = default;
  explicit SpinLabel(int twice_l);

  static SpinLabel from_value(double l);
  // Accepts "3/2", "1.5", "2".
  static SpinLabel parse(std::string_view text);

  constexpr int twice() const { return twice_l_; }
  constexpr double value() const { return 0.5 * twice_l_; }
  constexpr int dim() const { return twice_l_ + 1; }
  // Casimir eigenvalue l(l+1).
  constexpr double casimir() const { return value() * (value() + 1.0); }
  // m value at basis index k.
  constexpr double m_at(int k) const { return value() - k; }
  // Basis index of m (m given as twice its value).
  constexpr int index_of_twice_m(int twice_m) const { return (twice_l_ - twice_m) / 2; }

  std::string to_string() const;

  friend constexpr bool operator==(SpinLabel a, SpinLabel b) { return a.twice_l_ == b.twice_l_; }
  friend constexpr SpinLabel operator+(SpinLabel a, SpinLabel b) {
    SpinLabel s;
    s.twice_l_ = a.twice_l_ + b.twice_l_;
    return s;
  }

 private:
  int twice_l_ = 0;
};

// Point on the Bloch sphere. phi is ignored at the poles.
struct SphereDirection {
  double theta = 0.0;
  double phi = 0.0;

  static SphereDirection north() { return {0.0, 0.0}; }
  static SphereDirection south() { return {kPi, 0.0}; }
  // Wraps phi into [0, 2pi) and theta into [0, pi].
  static SphereDirection normalized(double theta, double phi);
  static SphereDirection from_unit_vector(const Eigen::Vector3d& n);

  Eigen::Vector3d unit_vector() const;
  SphereDirection antipode() const;
};

// Geodesic angle between two directions, in [0, pi].
double geodesic_angle(const SphereDirection& a, const SphereDirection& b);

class PureState {
 public:
  // Throws DomainError unless the amplitude vector has length dim and unit
  // norm within 1e-12.
  PureState(SpinLabel spin, CVector amplitudes);
  // Normalizes first; throws DomainError on a zero vector.
  static PureState normalized(SpinLabel spin, CVector amplitudes);
  static PureState basis(SpinLabel spin, int index);

  SpinLabel spin() const { return spin_; }
  const CVector& amplitudes() const { return amplitudes_; }
  cplx operator[](int k) const { return amplitudes_(k); }

 private:
  SpinLabel spin_;
  CVector amplitudes_;
};

class DensityMatrix {
 public:
  // Validates Hermiticity, trace and positivity at 1e-12 (scaled by dimension
  // for the eigenvalue check).
  DensityMatrix(SpinLabel spin, CMatrix matrix);
  static DensityMatrix pure(const PureState& psi);
  static DensityMatrix maximally_mixed(SpinLabel spin);
  // Convex combination of pure states; weights must be nonnegative and sum to 1.
  static DensityMatrix mixture(SpinLabel spin, const std::vector<PureState>& states,
                               const std::vector<double>& weights);

  SpinLabel spin() const { return spin_; }
  const CMatrix& matrix() const { return matrix_; }

 private:
  SpinLabel spin_;
  CMatrix matrix_;
};

// |<a|b>|^2
double fidelity(const PureState& a, const PureState& b);

}  // namespace wehrl
