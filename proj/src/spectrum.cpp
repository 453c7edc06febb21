#include "wehrl/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "wehrl/errors.hpp"

namespace wehrl {

SpectrumVector::SpectrumVector(std::vector<double> values) : values_(std::move(values)) {
  for (double& v : values_) {
    if (!std::isfinite(v)) throw DomainError("non-finite spectrum entry");
    if (v < 0) {
      if (v < -1e-10) throw DomainError("spectrum entry " + std::to_string(v) + " is negative");
      v = 0.0;
    }
  }
  std::sort(values_.begin(), values_.end(), std::greater<>());
}

SpectrumVector SpectrumVector::of(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  const RVector& ev = es.eigenvalues();
  return SpectrumVector(std::vector<double>(ev.data(), ev.data() + ev.size()));
}

double SpectrumVector::sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

SpectrumVector SpectrumVector::nonzero(double threshold) const {
  std::vector<double> out;
  for (double v : values_)
    if (v > threshold) out.push_back(v);
  return SpectrumVector(std::move(out));
}

SpectrumVector SpectrumVector::normalized() const {
  const double s = sum();
  if (!(s > 0)) throw DomainError("cannot normalize a zero spectrum");
  std::vector<double> out(values_);
  for (double& v : out) v /= s;
  return SpectrumVector(std::move(out));
}

double shannon_entropy(const SpectrumVector& s) {
  double h = 0.0;
  for (double v : s.values())
    if (v > 0) h -= v * std::log(v);
  return h;
}

}  // namespace wehrl
