#pragma once

// Spin coherent states, Husimi lower symbols and the stellar (Majorana)
// representation.
//
// Phase convention: a_m = C(2l, l+m)^{1/2} cos^{l+m}(θ/2) sin^{l-m}(θ/2) e^{-i m φ},
// which is exactly rotation_matrix(l, Ω) |l,l>.

#include <vector>

#include "wehrl/quadrature.hpp"
#include "wehrl/spin.hpp"

namespace wehrl {

PureState coherent_state(SpinLabel spin, const SphereDirection& direction);

// <Ω|ρ|Ω>
double husimi(const DensityMatrix& rho, const SphereDirection& direction);
double husimi(const PureState& psi, const SphereDirection& direction);

// cos^{4l}(Θ/2) with Θ the geodesic angle.
double overlap_sq(SpinLabel spin, const SphereDirection& a, const SphereDirection& b);

// max |(2l+1) ∫ dΩ/4π |Ω><Ω| - 1| by quadrature. Requires exactness for
// half-angle degree 4l; throws PreconditionError otherwise.
double completeness_defect(SpinLabel spin, const QuadratureSpec& quad);

// Unordered multiset of 2l points.
struct StellarRoots {
  SpinLabel spin;
  std::vector<SphereDirection> roots;
};

// Roots of the Majorana polynomial
//   p(z) = sum_m (-1)^{l-m} C(2l, l+m)^{1/2} a_m z^{l+m},
// mapped to the sphere by z = tan(θ/2) e^{iφ}. Missing degree is reported as
// roots at the south pole (z = ∞).
StellarRoots stellar_roots(const PureState& psi);
StellarRoots stellar_roots(SpinLabel spin, const CVector& amplitudes);

// Normalized symmetrized product of the spin-1/2 coherent states at the roots.
PureState state_from_roots(const StellarRoots& roots);

// Distance between two root multisets: minimum over matchings of the largest
// geodesic angle. Brute force for up to 8 points, greedy beyond.
double multiset_distance(const StellarRoots& a, const StellarRoots& b);

struct CoherentFit {
  SphereDirection direction;
  double fidelity = 0;
};

// Maximizes the Husimi function of |ψ><ψ|: 32 x 64 grid scan, then a local
// pattern search that halves its step at most 50 times. Among grid ties the
// first node in (theta, phi) scan order wins.
CoherentFit closest_coherent(const PureState& psi);

}  // namespace wehrl
