#pragma once

// SU(2) representation machinery: generators, Clebsch-Gordan coupling,
// projector onto the stretched component of a product, and rotations.

#include <vector>

#include "wehrl/spin.hpp"

namespace wehrl {

struct Generators {
  CMatrix lz, lplus, lminus;
  // Hermitian Cartesian components; l3 == lz.
  CMatrix l1, l2, l3;
};

Generators generators(SpinLabel spin);

// Coupling coefficients <l1 m1; l2 m2 | J M> for one fixed (l1, l2, J), all
// M at once. Built by the highest-weight recursion (J+ |J,J> = 0) followed by
// repeated lowering with per-column renormalization; Condon-Shortley sign
// (<l1 l1; l2 J-l1 | J J> > 0). Stable in double precision to twice_l ~ 400.
class CouplingTable {
 public:
  CouplingTable(SpinLabel l1, SpinLabel l2, SpinLabel total);

  SpinLabel l1() const { return l1_; }
  SpinLabel l2() const { return l2_; }
  SpinLabel total() const { return total_; }

  // Indices are basis indices (m = l - k) in the respective spaces.
  // Returns 0 where the selection rule m1 + m2 = M fails.
  double operator()(int k1, int k2, int kM) const;

  // Isometry from [J] into [l1] x [l2]: column kM is |J, M> expanded in the
  // product basis (row index k1 * d2 + k2).
  CMatrix isometry() const;

 private:
  SpinLabel l1_, l2_, total_;
  // coeff_[kM](k1): component on |m1> |M - m1>
  std::vector<RVector> coeff_;
};

// Half-integer arguments are given as twice their values. Throws DomainError
// on triangle or range violations and on parity mismatch.
double clebsch_gordan(SpinLabel l1, SpinLabel l2, SpinLabel total, int twice_m1, int twice_m2, int twice_M);

// Orthogonal projector onto [l+j] inside [l] x [j], as a full matrix on the
// (2l+1)(2j+1)-dimensional product.
CMatrix symmetric_projector(SpinLabel l, SpinLabel j);

// Wigner rotation D(Omega) = exp(-i phi Lz) exp(-i theta L2).
CMatrix rotation_matrix(SpinLabel spin, const SphereDirection& direction);
// Rotation about an arbitrary Euler triple exp(-i a Lz) exp(-i b L2) exp(-i c Lz).
CMatrix rotation_matrix(SpinLabel spin, double alpha, double beta, double gamma);

PureState rotate(const PureState& psi, const SphereDirection& direction);
DensityMatrix rotate(const DensityMatrix& rho, const SphereDirection& direction);

// Kronecker product helper, row index = i * b.rows() + k.
CMatrix kron(const CMatrix& a, const CMatrix& b);

// Hermitian part of an (almost) Hermitian matrix.
inline CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace wehrl
