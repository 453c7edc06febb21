#pragma once

// Entropy functionals of spin density matrices.

#include <vector>

#include "wehrl/coherent.hpp"
#include "wehrl/quadrature.hpp"
#include "wehrl/spectrum.hpp"
#include "wehrl/spin.hpp"

namespace wehrl {

double von_neumann(const DensityMatrix& rho);

// -sum p_n ln p_n with p_n = tr(ρ E_n). Effects must be PSD and sum to the
// identity within 1e-10 (DomainError otherwise).
double povm_entropy(const DensityMatrix& rho, const std::vector<CMatrix>& effects);

struct WehrlResult {
  double value = 0;
  // Final grid used and the last successive difference.
  QuadratureSpec grid;
  double last_change = 0;
};

// -(2l+1) ∫ dΩ/4π ρ(Ω) ln ρ(Ω). Starts from `quad` and doubles both node
// counts until two consecutive doublings each change the value by less than
// quad.tol. Throws
// ConvergenceError if n_theta would exceed 4096.
WehrlResult wehrl_adaptive(const DensityMatrix& rho, const QuadratureSpec& quad = {});
WehrlResult wehrl_adaptive(const PureState& psi, const QuadratureSpec& quad = {});
double wehrl_entropy(const DensityMatrix& rho, const QuadratureSpec& quad = {});
double wehrl_entropy(const PureState& psi, const QuadratureSpec& quad = {});
// Single fixed-grid evaluation, no refinement.
double wehrl_fixed(const PureState& psi, const QuadratureSpec& quad);
// Pure-state Wehrl entropy without a refinement loop. The Husimi function
// factors as K Π_i (1 + n·ω_i)/2 over the stellar roots ω_i, and each log
// factor integrates exactly against the spin distribution along ω_i:
//   S_W = -ln K + Σ_i Σ_m p_m(ω_i) (H_{2l+1} - H_{l+m}).
// Clustered roots are found only to ~ε^{1/multiplicity}; if two roots lie
// closer than kStellarClusterAngle the value comes from wehrl_adaptive(psi, quad).
inline constexpr double kStellarClusterAngle = 0.05;
double wehrl_stellar(const PureState& psi, const QuadratureSpec& quad = {});

// 2l/(2l+1)
double coherent_wehrl(SpinLabel spin);

// Squared chordal distances between stellar roots. The closed forms below
// are stated for a Bloch sphere of unit diameter, i.e.
//   value = kChordalScale * |n_i - n_j|^2 = sin^2(Θ_ij / 2)
// with n_i unit vectors. kChordalScale was recovered by matching the spin-1
// closed form to quadrature (see tests/test_entropy.cpp).
inline constexpr double kChordalScale = 0.25;

struct ChordalData {
  // spin 1: {μ}; spin 3/2: {ε, μ, ν}
  std::vector<double> values;
};

ChordalData chordal_data(const StellarRoots& roots, double scale = kChordalScale);

// Closed-form Wehrl entropy for spin 1 and spin 3/2. Throws DomainError for
// other spins, a wrong number of distances, or 1/c <= 0.
double wehrl_closed(SpinLabel spin, const ChordalData& chordal);

// M_n = (2l+1) ∫ dΩ/4π ρ(Ω)^n by quadrature. Requires half-angle exactness
// 4ln (PreconditionError otherwise).
double renyi_wehrl_moment(const DensityMatrix& rho, int n, const QuadratureSpec& quad);
// Same moment as (2l+1)/(2nl+1) tr(P_{nl} ρ^{⊗n}).
// Throws ResourceError when (2l+1)^n exceeds 1e5.
double renyi_wehrl_projector(const DensityMatrix& rho, int n);
// (2l+1)/(2ln+1)
double coherent_renyi_moment(SpinLabel spin, int n);
// Rényi-Wehrl entropy ln(M_n)/(1-n) of integer order n >= 2; tends to the
// Wehrl entropy as n -> 1.
double renyi_wehrl_entropy(double moment, int n);

}  // namespace wehrl
