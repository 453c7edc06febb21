#include <doctest.h>

#include <cmath>

#include "wehrl/coherent.hpp"
#include "wehrl/entropy.hpp"
#include "wehrl/errors.hpp"
#include "wehrl/repcore.hpp"
#include "wehrl/sampling.hpp"

using namespace wehrl;

namespace {

DensityMatrix diag3(double a, double b, double c) {
  CMatrix m = CMatrix::Zero(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return DensityMatrix(SpinLabel(2), m);
}


}  // namespace

TEST_CASE("von Neumann entropy") {
  Rng rng(9);
  CHECK(von_neumann(DensityMatrix::pure(haar_state(SpinLabel(3), rng))) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(von_neumann(DensityMatrix::maximally_mixed(SpinLabel(4))) == doctest::Approx(std::log(5.0)).epsilon(1e-14));
  // Frozen: ln 3 - (2/3) ln 2
  CHECK(von_neumann(diag3(2.0 / 3, 1.0 / 3, 0)) == doctest::Approx(0.6365141682948128).epsilon(1e-14));
  CHECK(von_neumann(diag3(2.0 / 3, 1.0 / 3, 0)) == doctest::Approx(0.63651).epsilon(1e-5));
}

TEST_CASE("POVM entropy") {
  Rng rng(4);
  const DensityMatrix rho = random_density(SpinLabel(3), rng);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix());
  std::vector<CMatrix> proj;
  for (int i = 0; i < 4; ++i) proj.push_back(es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint());
  CHECK(povm_entropy(rho, proj) == doctest::Approx(von_neumann(rho)).epsilon(1e-12));
  CHECK(std::abs(povm_entropy(rho, {CMatrix::Identity(4, 4)})) < 1e-15);
  CHECK_THROWS_AS(povm_entropy(rho, {0.5 * CMatrix::Identity(4, 4)}), DomainError);

  // Tetrahedral qubit POVM E_i = |ω_i><ω_i| / 2.
  const double t = std::acos(-1.0 / 3);
  const std::vector<SphereDirection> dirs = {{0, 0}, {t, 0}, {t, 2 * kPi / 3}, {t, 4 * kPi / 3}};
  std::vector<CMatrix> tet;
  for (const auto& d : dirs) {
    const CVector v = coherent_state(SpinLabel(1), d).amplitudes();
    tet.push_back(0.5 * v * v.adjoint());
  }
  const DensityMatrix q = random_density(SpinLabel(1), rng);
  double ref = 0;
  for (const auto& d : dirs) {
    const double p = 0.5 * husimi(q, d);
    ref -= p * std::log(p);
  }
  CHECK(povm_entropy(q, tet) == doctest::Approx(ref).epsilon(1e-13));
  CHECK(povm_entropy(q, tet) >= von_neumann(q));
}

TEST_CASE("Wehrl entropy of coherent and maximally mixed states") {
  Rng rng(8);
  for (int t = 0; t <= 10; ++t) {
    const SpinLabel s(t);
    const PureState c = coherent_state(s, uniform_direction(rng));
    CHECK(std::abs(wehrl_entropy(c) - coherent_wehrl(s)) < 1e-8);
    CHECK(std::abs(wehrl_entropy(DensityMatrix::maximally_mixed(s)) - std::log(s.dim())) < 1e-8);
  }
}

TEST_CASE("Wehrl entropy of |1,0> matches its closed form") {
  // Frozen: 5/3 - ln 2, from the spin-1 closed form with antipodal roots.
  const double value = wehrl_entropy(PureState::basis(SpinLabel(2), 1));
  CHECK(std::abs(value - (5.0 / 3.0 - std::log(2.0))) < 1e-8);
  CHECK(std::abs(value - 0.9735194861067215) < 1e-8);
}

TEST_CASE("chordal scale calibration") {
  // Recover the scale by bisection on the antipodal configuration, then check
  // it against the stored constant.
  const PureState psi = PureState::basis(SpinLabel(2), 1);
  const double target = wehrl_entropy(psi);
  const StellarRoots roots = stellar_roots(psi);
  double lo = 0.01, hi = 0.49;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    // S grows with μ on this branch.
    if (wehrl_closed(SpinLabel(2), chordal_data(roots, mid)) < target) lo = mid;
    else hi = mid;
  }
  CHECK(0.5 * (lo + hi) == doctest::Approx(kChordalScale).epsilon(1e-7));
  CHECK(kChordalScale == 0.25);
}

TEST_CASE("closed forms agree with quadrature on random constellations") {
  Rng rng(77);
  for (int rep = 0; rep < 100; ++rep) {
    const StellarRoots r1{SpinLabel(2), {uniform_direction(rng), uniform_direction(rng)}};
    CHECK(std::abs(wehrl_closed(SpinLabel(2), chordal_data(r1)) - wehrl_entropy(state_from_roots(r1))) < 1e-7);
    const StellarRoots r2{SpinLabel(3), {uniform_direction(rng), uniform_direction(rng), uniform_direction(rng)}};
    CHECK(std::abs(wehrl_closed(SpinLabel(3), chordal_data(r2)) - wehrl_entropy(state_from_roots(r2))) < 1e-7);
  }
  CHECK(wehrl_closed(SpinLabel(2), {{0.0}}) == 2.0 / 3.0);
  CHECK(wehrl_closed(SpinLabel(3), {{0.0, 0.0, 0.0}}) == 0.75);
  CHECK_THROWS_AS(wehrl_closed(SpinLabel(2), {{2.0}}), DomainError);
  CHECK_THROWS_AS(wehrl_closed(SpinLabel(3), {{1.0, 1.0, 1.0}}), DomainError);
  CHECK_THROWS_AS(wehrl_closed(SpinLabel(4), {{0.0}}), DomainError);
  CHECK_THROWS_AS(wehrl_closed(SpinLabel(2), {{0.0, 0.0}}), DomainError);
}

TEST_CASE("Wehrl exceeds von Neumann and is rotation invariant") {
  for (int t = 1; t <= 4; ++t) {
    const SpinLabel s(t);
    for (const auto& psi : haar_states(s, 200, 300 + t)) CHECK(wehrl_entropy(psi) > 1e-6);
    Rng rng(t);
    const DensityMatrix rho = random_density(s, rng);
    CHECK(wehrl_entropy(rho) > von_neumann(rho) + 1e-6);
    CHECK(std::abs(wehrl_entropy(rotate(rho, uniform_direction(rng))) - wehrl_entropy(rho)) < 2e-9);
  }
}

TEST_CASE("Wehrl refinement reports non-convergence") {
  QuadratureSpec q;
  q.tol = 1e-300;
  CHECK_THROWS_AS(wehrl_adaptive(PureState::basis(SpinLabel(2), 1), q), ConvergenceError);
}

TEST_CASE("refinement does not stop on a coarse-grid plateau") {
  // Every spin-1/2 state is coherent. Coarse grids can agree to 1e-10 while
  // both sit 1e-9 below the true value.
  double worst = 0;
  for (const PureState& psi : haar_states(SpinLabel(1), 300, 7001))
    worst = std::max(worst, std::abs(wehrl_entropy(psi) - 0.5));
  CHECK(worst < 1e-9);
}

TEST_CASE("stellar Wehrl evaluation") {
  CHECK(wehrl_stellar(PureState::basis(SpinLabel(0), 0)) == 0.0);
  CHECK(std::abs(wehrl_stellar(PureState::basis(SpinLabel(2), 1)) - 0.9735194861067215) < 1e-13);
  Rng rng(12);
  for (int t = 1; t <= 8; ++t) {
    const SpinLabel s(t);
    CAPTURE(t);
    CHECK(std::abs(wehrl_stellar(coherent_state(s, uniform_direction(rng))) - coherent_wehrl(s)) < 1e-9);
    for (const PureState& psi : haar_states(s, 10, 300 + t))
      CHECK(std::abs(wehrl_stellar(psi) - wehrl_entropy(psi)) < 1e-9);
  }
  // near-degenerate constellation: 5 coincident roots plus one
  const SphereDirection d{1.2, 0.4};
  StellarRoots r{SpinLabel(6), {d, d, d, d, d, {2.0, 3.0}}};
  const PureState psi = state_from_roots(r);
  CHECK(std::abs(wehrl_stellar(psi) - wehrl_entropy(psi)) < 1e-12);
}

TEST_CASE("integer Renyi-Wehrl moments") {
  Rng rng(31);
  for (int t = 1; t <= 4; ++t) {
    const SpinLabel s(t);
    const DensityMatrix rho = random_density(s, rng);
    CHECK(renyi_wehrl_moment(rho, 1, QuadratureSpec::exact_for(2 * t)) == doctest::Approx(1.0).epsilon(1e-13));
    for (int n = 2; n <= 4; ++n) {
      const QuadratureSpec q = QuadratureSpec::exact_for(2 * n * t);
      const DensityMatrix c = DensityMatrix::pure(coherent_state(s, uniform_direction(rng)));
      CHECK(std::abs(renyi_wehrl_moment(c, n, q) - coherent_renyi_moment(s, n)) < 1e-10);
      CHECK(std::abs(renyi_wehrl_projector(c, n) - coherent_renyi_moment(s, n)) < 1e-10);
      if (std::pow(s.dim(), n) <= 1e5) {
        CHECK(std::abs(renyi_wehrl_moment(rho, n, q) - renyi_wehrl_projector(rho, n)) < 1e-10);
        const DensityMatrix p = DensityMatrix::pure(haar_state(s, rng));
        CHECK(std::abs(renyi_wehrl_moment(p, n, q) - renyi_wehrl_projector(p, n)) < 1e-10);
      }
    }
  }
  CHECK(renyi_wehrl_projector(DensityMatrix::maximally_mixed(SpinLabel(3)), 1) == 1.0);
  CHECK_THROWS_AS(renyi_wehrl_moment(DensityMatrix::maximally_mixed(SpinLabel(4)), 3, {4, 8}), PreconditionError);
  CHECK_THROWS_AS(renyi_wehrl_projector(DensityMatrix::maximally_mixed(SpinLabel(10)), 6), ResourceError);
  CHECK(renyi_wehrl_entropy(coherent_renyi_moment(SpinLabel(2), 2), 2) == doctest::Approx(std::log(5.0 / 3.0)));
}

TEST_CASE("coherent states maximize the Renyi moments") {
  for (int t = 1; t <= 4; ++t)
    for (int n = 2; n <= 3; ++n) {
      const SpinLabel s(t);
      const double top = coherent_renyi_moment(s, n);
      double worst = 0;
      for (const auto& psi : haar_states(s, 500, 1000 * t + n))
        worst = std::max(worst, renyi_wehrl_projector(DensityMatrix::pure(psi), n));
      CHECK(worst <= top + 1e-12);
    }
}

TEST_CASE("Renyi-Wehrl entropies do not increase with the order") {
  // S_W >= S_2 >= S_3
  Rng rng(12);
  const PureState psi = haar_state(SpinLabel(3), rng);
  const DensityMatrix rho = DensityMatrix::pure(psi);
  const double s2 = renyi_wehrl_entropy(renyi_wehrl_projector(rho, 2), 2);
  const double s3 = renyi_wehrl_entropy(renyi_wehrl_projector(rho, 3), 3);
  CHECK(s3 <= s2 + 1e-12);
  CHECK(s2 <= wehrl_entropy(psi) + 1e-9);
}
