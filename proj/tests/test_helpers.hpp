#pragma once

#include <cmath>

#include "wehrl/spin.hpp"

namespace testing_util {

inline double max_abs(const wehrl::CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Brute-force Hermitian matrix exponential exp(-i t H) via eigendecomposition.
wehrl::CMatrix expi(const wehrl::CMatrix& h, double t);

}  // namespace testing_util
