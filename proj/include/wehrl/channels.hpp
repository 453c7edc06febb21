#pragma once

// Covariant SU(2) channels: the projection channel [l] -> [l+j] (primal,
// Kraus and dual-Gram forms) and the angular channel on [l].

#include <vector>

#include "wehrl/spectrum.hpp"
#include "wehrl/spin.hpp"

namespace wehrl {

// Output in the |l+j, M> basis of the image of P_{l+j}.
struct ChannelOutput {
  SpinLabel spin_out;
  CMatrix matrix;
  SpectrumVector spectrum;
};

// Tensor-space guard for the primal and Kraus routes.
inline constexpr long kMaxProductDim = 40000;

// ρ ↦ (2l+1)/(2(l+j)+1) P_{l+j} (ρ ⊗ 1) P_{l+j}, built from the full tensor
// matrix ρ ⊗ 1. Throws ResourceError above kMaxProductDim.
ChannelOutput projection_channel(const DensityMatrix& rho, SpinLabel j);

// A_M = sqrt((2l+1)/(2(l+j)+1)) <l+j| (1 ⊗ |j,M>), M = j..-j; each is
// (2(l+j)+1) x (2l+1).
std::vector<CMatrix> projection_kraus(SpinLabel l, SpinLabel j);
ChannelOutput apply_kraus(const std::vector<CMatrix>& kraus, const CMatrix& rho, SpinLabel spin_out);

// (2j+1) x (2j+1) matrix (2l+1)/(2(l+j)+1) <ψ ⊗ M'| P_{l+j} |ψ ⊗ M>. Uses
// only Clebsch-Gordan columns, so j = 100 is cheap.
CMatrix projection_dual_gram(const PureState& psi, SpinLabel j);

// von Neumann entropy of the projection channel output. Pure inputs go through
// the dual Gram matrix; mixed inputs through the primal route.
double projection_entropy(const DensityMatrix& rho, SpinLabel j);
double projection_entropy(const PureState& psi, SpinLabel j);
// ln((2l+1)/(2(l+j)+1))
double projection_shift(SpinLabel l, SpinLabel j);

// ρ ↦ (1/(l(l+1))) Σ_i L_i ρ L_i. Requires l >= 1/2.
ChannelOutput angular_channel(const DensityMatrix& rho);
// Same map written with the ladder operators L± / sqrt 2 and Lz.
ChannelOutput angular_channel_ladder(const DensityMatrix& rho);
// G_ij = <ψ| L_i L_j |ψ> / (l(l+1)).
CMatrix angular_gram(const PureState& psi);
double angular_entropy(const PureState& psi);
double angular_entropy(const DensityMatrix& rho);
// Unnormalized coherent Gram spectrum (l^2, l, 0).
std::vector<double> coherent_angular_tuple(SpinLabel spin);

enum class ChannelKind { kProjection, kAngular };

// max |Φ(UρU†) - U' Φ(ρ) U'†| for the rotation to `direction`; j is ignored for
// the angular channel.
double channel_covariance_defect(ChannelKind kind, const DensityMatrix& rho, const SphereDirection& direction,
                                 SpinLabel j = SpinLabel(1));
// General Euler rotation variant.
double channel_covariance_defect(ChannelKind kind, const DensityMatrix& rho, double alpha, double beta, double gamma,
                                 SpinLabel j = SpinLabel(1));

}  // namespace wehrl
