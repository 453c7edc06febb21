#pragma once

// Seeded sampling helpers. All generators are std::mt19937_64; independent
// streams are derived from a master seed with splitmix64 so that batches can
// be drawn in parallel and still be reproducible.

#include <cstdint>
#include <random>
#include <vector>

#include "wehrl/spin.hpp"

namespace wehrl {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);
// Seed for stream `index` of `master`: splitmix64(master ^ splitmix64(index + 1)).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// Normalized vector of i.i.d. standard complex Gaussians (Haar on the sphere).
CVector haar_vector(int dim, Rng& rng);
PureState haar_state(SpinLabel spin, Rng& rng);
std::vector<PureState> haar_states(SpinLabel spin, int count, std::uint64_t seed);

// Random full-rank state: G G† / tr, G complex Ginibre.
CMatrix random_density(int dim, Rng& rng);
DensityMatrix random_density(SpinLabel spin, Rng& rng);

// Haar unitary via QR of a Ginibre matrix with the R-diagonal phase fix.
// special = true rescales to determinant 1.
CMatrix haar_unitary(int dim, Rng& rng, bool special = false);

SphereDirection uniform_direction(Rng& rng);

}  // namespace wehrl
