#pragma once

// Symmetric SU(N) representations as bosonic Fock sectors H_M (M bosons in
// N modes), second-quantized operators, the universal cloning channel Φ^k,
// reduced density matrices γ^ℓ and the measure-and-prepare channel.
//
// Basis of H_M: occupation tuples (n_1..n_N), Σ n_i = M, ordered
// lexicographically descending. For N = 2 this is the |l, m> order of the
// spin modules under l = M/2, m = (n_1 - n_2)/2.

#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/SparseCore>

#include "wehrl/spectrum.hpp"
#include "wehrl/spin.hpp"

namespace wehrl {

using Occupation = std::vector<int>;
using CSparse = Eigen::SparseMatrix<cplx>;

// Largest sector dimension any routine will build (dense output matrices).
inline constexpr long kMaxFockDim = 4096;

class SymmetricSpace {
 public:
  SymmetricSpace(int modes, int bosons);

  int modes() const { return modes_; }
  int bosons() const { return bosons_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Occupation>& basis() const { return basis_; }
  const Occupation& occupation(int index) const { return basis_[index]; }
  // -1 if the tuple is not in this sector.
  int index_of(const Occupation& n) const;

  // C(M+N-1, N-1)
  static long dimension(int modes, int bosons);

 private:
  int modes_;
  int bosons_;
  std::vector<Occupation> basis_;
  std::map<Occupation, int> index_;
};

// Creation/annihilation matrices between consecutive sectors 0..max_bosons.
class FockOperatorSet {
 public:
  FockOperatorSet(int modes, int max_bosons);

  int modes() const { return modes_; }
  int max_bosons() const { return max_bosons_; }
  const SymmetricSpace& space(int bosons) const { return spaces_.at(bosons); }
  // a*_i : H_M -> H_{M+1}; requires M < max_bosons.
  const CSparse& creation(int mode, int bosons) const { return creation_.at(bosons).at(mode); }
  // a_i : H_M -> H_{M-1}; requires M >= 1.
  CSparse annihilation(int mode, int bosons) const { return creation_.at(bosons - 1).at(mode).adjoint(); }

  // max over sectors M < max_bosons and modes of |[a_i, a*_j] - δ_ij| on H_M.
  double commutator_defect() const;

 private:
  int modes_;
  int max_bosons_;
  std::vector<SymmetricSpace> spaces_;
  std::vector<std::vector<CSparse>> creation_;
};

// |Ω ⊗ ... ⊗ Ω>: amplitude(n) = sqrt(M!/Π n_i!) Π Ω_i^{n_i}. Ω is normalized
// first; DomainError on a zero vector.
CVector coherent_condensate(const SymmetricSpace& space, const CVector& omega);

// Matrix of U^{⊗M} restricted to H_M.
CMatrix symmetric_power(const CMatrix& u, const SymmetricSpace& space);

struct FockChannelOutput {
  int bosons_out = 0;
  CMatrix matrix;
  SpectrumVector spectrum;
};

// Linear map X ↦ (1/s) Σ a*_{i1}..a*_{ik} X a_{ik}..a_{i1} from H_M to
// H_{M+k}, with s the scalar such that Σ K†K = s·1. Throws ConsistencyError if
// Σ K†K deviates from s·1 by more than 1e-8 (relative), ResourceError if
// dim H_{M+k} > kMaxFockDim.
CMatrix cloning_map(const CMatrix& x, int modes, int bosons, int k, double* scalar = nullptr);
// Trace-one input, validated; output spectrum attached.
FockChannelOutput cloning_channel(const CMatrix& rho, int modes, int bosons, int k);
// Σ K†K for the cloning Kraus family, as a matrix on H_M.
CMatrix cloning_kraus_gram(int modes, int bosons, int k);

// γ^ℓ(ρ) on H_ℓ with (γ)_{n n'} = ℓ!/sqrt(Π n_i! Π n'_i!) tr(a^n ρ (a^{n'})†),
// a^n = Π a_i^{n_i}. Normalized so that γ^ℓ(|Ω><Ω|) = M!/(M-ℓ)! |Ω_ℓ><Ω_ℓ|;
// tr γ^ℓ(ρ) = M!/(M-ℓ)! for every trace-one ρ. DomainError if ℓ > M.
CMatrix reduced_density(const CMatrix& rho, int modes, int bosons, int ell);
// M!/(M-ℓ)!
double falling_factorial(int m, int ell);

// <ψ ⊗ id| P_sym |ψ ⊗ id> over H_M ⊗ H_k, normalized to trace 1. Built from the
// explicit embedding H_{M+k} -> H_M ⊗ H_k.
CMatrix measure_prepare_channel(const CVector& psi, int modes, int bosons, int k);
// Same map from the second-quantized double sum
// Σ_{I,J} <ψ|a_I a*_J|ψ> a*_I|0><0|a_J over index strings of length k,
// normalized to trace 1.
CMatrix measure_prepare_second_quantized(const CVector& psi, int modes, int bosons, int k);

struct DecompositionResult {
  // coefficients[ℓ] multiplies Φ^ℓ(γ^{k-ℓ}) with both maps trace normalized;
  // terms with k - ℓ > M vanish identically and are reported as 0 and inactive.
  std::vector<double> coefficients;
  std::vector<bool> active;
  // max |fit - target| over both batches
  double residual = 0;
  // max |C(batch 1) - C(batch 2)|
  double batch_drift = 0;
  int batch_size = 0;
};

// Least-squares fit of Φ̃^k(|ψ><ψ|) = Σ_ℓ C_ℓ Φ^ℓ(γ^{k-ℓ}(|ψ><ψ|)) on two
// disjoint Haar batches. Throws ConsistencyError when the residual exceeds
// 1e-9 or the active terms are linearly dependent.
DecompositionResult decompose_measure_prepare(int modes, int bosons, int k, int batch_size = 20,
                                              std::uint64_t seed = 20240601);

struct MajorizationReport {
  int samples = 0;
  int passed = 0;
  int failed = 0;
  // largest prefix-sum deficit of the coherent spectrum (<= 0 means none)
  double worst_violation = 0;
  SpectrumVector coherent_spectrum;
};

MajorizationReport sun_coherent_majorization_test(int modes, int bosons, int k, int samples, std::uint64_t seed,
                                                  double eps = 1e-9);

}  // namespace wehrl
