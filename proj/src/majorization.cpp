#include "wehrl/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wehrl/errors.hpp"

namespace wehrl {

double majorization_deficit(const SpectrumVector& a, const SpectrumVector& b) {
  const std::size_t n = std::max(a.size(), b.size());
  double sa = 0, sb = 0, worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    sa += i < a.size() ? a[i] : 0.0;
    sb += i < b.size() ? b[i] : 0.0;
    worst = std::max(worst, sb - sa);
  }
  return n == 0 ? 0.0 : worst;
}

bool majorizes(const SpectrumVector& a, const SpectrumVector& b, double eps) {
  if (std::abs(a.sum() - b.sum()) > eps)
    throw DomainError("majorization needs equal totals, got " + std::to_string(a.sum()) + " and " +
                      std::to_string(b.sum()));
  return majorization_deficit(a, b) <= eps;
}

bool schur_concave_check(const std::function<double(double)>& f, const SpectrumVector& a, const SpectrumVector& b,
                         Curvature curvature) {
  const std::size_t n = std::max(a.size(), b.size());
  double fa = 0, fb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    fa += f(i < a.size() ? a[i] : 0.0);
    fb += f(i < b.size() ? b[i] : 0.0);
  }
  if (curvature == Curvature::kConvex) return fa >= fb - 1e-9;
  return fa <= fb + 1e-9;
}

}  // namespace wehrl
