#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"
#include "wehrl/coherent.hpp"
#include "wehrl/errors.hpp"
#include "wehrl/repcore.hpp"
#include "wehrl/sampling.hpp"

using namespace wehrl;
using testing_util::max_abs;

TEST_CASE("coherent state amplitudes") {
  for (int t = 0; t <= 6; ++t) {
    const SpinLabel s(t);
    CHECK(std::abs(coherent_state(s, SphereDirection::north())[0] - cplx(1.0)) < 1e-15);
    CHECK(std::abs(std::abs(coherent_state(s, SphereDirection::south())[t]) - 1.0) < 1e-15);
  }
  const PureState h = coherent_state(SpinLabel(1), {kPi / 2, 0.0});
  CHECK(std::abs(h[0] - cplx(1 / std::sqrt(2.0))) < 1e-15);
  CHECK(std::abs(h[1] - cplx(1 / std::sqrt(2.0))) < 1e-15);
  // phase e^{-i m phi}
  const PureState p = coherent_state(SpinLabel(2), {1.0, 0.4});
  CHECK(std::abs(std::arg(p[0]) + 0.4) < 1e-14);
  CHECK(std::abs(std::arg(p[1])) < 1e-14);
  CHECK(std::abs(std::arg(p[2]) - 0.4) < 1e-14);
}

TEST_CASE("husimi function") {
  Rng rng(11);
  for (int t = 1; t <= 6; ++t) {
    const SpinLabel s(t);
    const SphereDirection d = uniform_direction(rng);
    const DensityMatrix c = DensityMatrix::pure(coherent_state(s, d));
    CHECK(husimi(c, d) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(husimi(c, d.antipode()) < 1e-13);
    const DensityMatrix mixed = DensityMatrix::maximally_mixed(s);
    CHECK(husimi(mixed, uniform_direction(rng)) == doctest::Approx(1.0 / s.dim()).epsilon(1e-13));
    // Covariance: ρ(Ω) for UρU† at the rotated point.
    const DensityMatrix rho = random_density(s, rng);
    const double th = 0.8, ph = 2.1;
    const DensityMatrix r2 = rotate(rho, {th, ph});
    const SphereDirection pt = uniform_direction(rng);
    const Eigen::Vector3d n = pt.unit_vector();
    // rotation R_z(ph) R_y(th) applied to n
    const Eigen::Matrix3d rz = Eigen::AngleAxisd(ph, Eigen::Vector3d::UnitZ()).toRotationMatrix();
    const Eigen::Matrix3d ry = Eigen::AngleAxisd(th, Eigen::Vector3d::UnitY()).toRotationMatrix();
    const SphereDirection moved = SphereDirection::from_unit_vector(rz * ry * n);
    CHECK(std::abs(husimi(r2, moved) - husimi(rho, pt)) < 1e-11);
    const double v = husimi(rho, pt);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0 + 1e-12);
  }
}

TEST_CASE("overlap formula uses the half angle") {
  Rng rng(5);
  CHECK(overlap_sq(SpinLabel(1), SphereDirection::north(), {kPi / 2, 0}) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(overlap_sq(SpinLabel(3), SphereDirection::north(), SphereDirection::south()) < 1e-30);
  for (int t = 1; t <= 10; ++t)
    for (int rep = 0; rep < 200; ++rep) {
      const SpinLabel s(t);
      const SphereDirection a = uniform_direction(rng), b = uniform_direction(rng);
      const double direct = std::norm(coherent_state(s, a).amplitudes().dot(coherent_state(s, b).amplitudes()));
      CHECK(std::abs(direct - overlap_sq(s, a, b)) < 1e-12);
    }
}

TEST_CASE("completeness of coherent states") {
  CHECK(completeness_defect(SpinLabel(1), {8, 16}) < 1e-12);
  CHECK(completeness_defect(SpinLabel(6), QuadratureSpec::exact_for(12)) < 1e-10);
  for (int t = 0; t <= 10; ++t) CHECK(completeness_defect(SpinLabel(t), QuadratureSpec::exact_for(2 * t)) < 1e-10);
  CHECK_THROWS_AS(completeness_defect(SpinLabel(6), {4, 8}), PreconditionError);
}

TEST_CASE("stellar representation") {
  // |l,l> -> all roots at the north pole
  const StellarRoots top = stellar_roots(PureState::basis(SpinLabel(4), 0));
  REQUIRE(top.roots.size() == 4);
  for (const auto& r : top.roots) CHECK(r.theta < 1e-12);
  // |1,0> -> antipodal pair
  const StellarRoots mid = stellar_roots(PureState::basis(SpinLabel(2), 1));
  REQUIRE(mid.roots.size() == 2);
  CHECK(geodesic_angle(mid.roots[0], mid.roots[1]) == doctest::Approx(kPi).epsilon(1e-12));
  const PureState back = state_from_roots(mid);
  CHECK(fidelity(back, PureState::basis(SpinLabel(2), 1)) == doctest::Approx(1.0).epsilon(1e-12));
  // Equal roots give the coherent state.
  const SphereDirection w{1.2, 4.0};
  const PureState c = state_from_roots({SpinLabel(3), {w, w, w}});
  CHECK(fidelity(c, coherent_state(SpinLabel(3), w)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(stellar_roots(SpinLabel(2), CVector::Zero(3)), DomainError);

  for (int t = 1; t <= 8; ++t) {
    const auto states = haar_states(SpinLabel(t), 200, 100 + t);
    double worst = 1.0;
    for (const auto& psi : states) worst = std::min(worst, fidelity(state_from_roots(stellar_roots(psi)), psi));
    CHECK(worst >= 1 - 1e-9);
  }
  // Roots of a coherent state sit at its label (a 5-fold root only resolves
  // to about eps^(1/5)).
  const StellarRoots cr = stellar_roots(coherent_state(SpinLabel(5), w));
  for (const auto& r : cr.roots) CHECK(geodesic_angle(r, w) < 5e-3);
  // Rotating a state rotates its constellation.
  Rng rng(2);
  const PureState psi = haar_state(SpinLabel(3), rng);
  const StellarRoots a = stellar_roots(rotate(psi, {kPi, 0.0}));
  const StellarRoots b = stellar_roots(psi);
  StellarRoots b_moved{b.spin, {}};
  for (const auto& r : b.roots) {
    const Eigen::Vector3d n = r.unit_vector();
    b_moved.roots.push_back(SphereDirection::from_unit_vector({-n.x(), n.y(), -n.z()}));
  }
  CHECK(multiset_distance(a, b_moved) < 1e-9);
}

TEST_CASE("closest coherent state") {
  const SphereDirection w{2.0, 1.0};
  const CoherentFit fit = closest_coherent(coherent_state(SpinLabel(4), w));
  CHECK(fit.fidelity >= 1 - 1e-10);
  CHECK(geodesic_angle(fit.direction, w) < 1e-6);
  const CoherentFit mid = closest_coherent(PureState::basis(SpinLabel(2), 1));
  CHECK(mid.fidelity == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(mid.direction.theta == doctest::Approx(kPi / 2).epsilon(1e-6));
}
