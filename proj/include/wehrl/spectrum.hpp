#pragma once

#include <vector>

#include "wehrl/spin.hpp"

namespace wehrl {

// Eigenvalue list sorted descending with roundoff negatives clamped to 0.
class SpectrumVector {
 public:
  SpectrumVector() = default;
  // Sorts; clamps entries in [-1e-10, 0) to 0 and throws DomainError on
  // anything more negative.
  explicit SpectrumVector(std::vector<double> values);

  // Spectrum of the Hermitian part of m.
  static SpectrumVector of(const CMatrix& m);

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double sum() const;
  // Entries above `threshold`.
  SpectrumVector nonzero(double threshold = 1e-12) const;
  SpectrumVector normalized() const;

 private:
  std::vector<double> values_;
};

// -sum x ln x
double shannon_entropy(const SpectrumVector& s);

}  // namespace wehrl
