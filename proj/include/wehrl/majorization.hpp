#pragma once

// Eigenvalue majorization and Schur-concavity consistency checks.

#include <functional>

#include "wehrl/spectrum.hpp"

namespace wehrl {

inline constexpr double kMajorizationEps = 1e-9;

// max_k (Σ_{i<k} b_i - Σ_{i<k} a_i) over prefixes, shorter vector zero-padded.
// A value <= eps means a majorizes b.
double majorization_deficit(const SpectrumVector& a, const SpectrumVector& b);

// True iff every prefix sum of a >= the matching prefix sum of b - eps.
// DomainError if the totals differ by more than eps.
bool majorizes(const SpectrumVector& a, const SpectrumVector& b, double eps = kMajorizationEps);

enum class Curvature { kConcave, kConvex };

// For a majorizing b: checks Σ f(a_i) <= Σ f(b_i) + 1e-9 for concave f, and the
// reversed inequality for convex f. Both vectors are zero-padded to equal
// length first.
bool schur_concave_check(const std::function<double(double)>& f, const SpectrumVector& a, const SpectrumVector& b,
                         Curvature curvature = Curvature::kConcave);

}  // namespace wehrl
