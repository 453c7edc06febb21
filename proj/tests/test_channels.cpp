#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "test_helpers.hpp"
#include "wehrl/channels.hpp"
#include "wehrl/coherent.hpp"
#include "wehrl/entropy.hpp"
#include "wehrl/errors.hpp"
#include "wehrl/majorization.hpp"
#include "wehrl/repcore.hpp"
#include "wehrl/sampling.hpp"

using namespace wehrl;
using testing_util::max_abs;

namespace {

const double kCoherentHalf = std::log(3.0) - 2.0 / 3.0 * std::log(2.0);

// Compares against the expected values sorted descending, zero-padding
// whichever side is shorter.
void check_spectrum(const SpectrumVector& s, std::vector<double> expected, double tol) {
  std::sort(expected.rbegin(), expected.rend());
  const std::size_t n = std::max(s.size(), expected.size());
  for (std::size_t i = 0; i < n; ++i)
    CHECK(std::abs((i < s.size() ? s[i] : 0.0) - (i < expected.size() ? expected[i] : 0.0)) < tol);
}

// Dense P (ρ ⊗ 1) P in the product basis; nonzero spectrum is the channel's.
SpectrumVector dense_projection_spectrum(const DensityMatrix& rho, SpinLabel j) {
  const SpinLabel l = rho.spin();
  const CMatrix p = symmetric_projector(l, j);
  const CMatrix big = p * kron(rho.matrix(), CMatrix::Identity(j.dim(), j.dim())) * p;
  return SpectrumVector::of(big * ((l.twice() + 1.0) / ((l + j).twice() + 1.0)));
}

}  // namespace

TEST_CASE("projection channel on l = j = 1/2") {
  const SpinLabel h(1);
  const DensityMatrix up = DensityMatrix::pure(PureState::basis(h, 0));
  const ChannelOutput out = projection_channel(up, h);
  CHECK(out.spin_out.twice() == 2);
  check_spectrum(out.spectrum, {2.0 / 3, 1.0 / 3, 0.0}, 1e-14);
  const CMatrix g = projection_dual_gram(PureState::basis(h, 0), h);
  CHECK(max_abs(g - CMatrix(Eigen::Vector2cd(2.0 / 3, 1.0 / 3).asDiagonal())) < 1e-14);
  CHECK(projection_entropy(up, h) == doctest::Approx(kCoherentHalf).epsilon(1e-13));
  CHECK(projection_kraus(h, h).size() == 2);
  CHECK(projection_kraus(h, h)[0].rows() == 3);
  CHECK(projection_kraus(h, h)[0].cols() == 2);
  for (const auto& psi : haar_states(h, 20, 5))
    check_spectrum(projection_channel(DensityMatrix::pure(psi), h).spectrum, {2.0 / 3, 1.0 / 3, 0.0}, 1e-12);
}

TEST_CASE("projection channel: Kraus, primal, dense and dual routes agree") {
  Rng rng(6);
  for (int tl = 0; tl <= 4; ++tl)
    for (int tj = 1; tj <= 3; ++tj) {
      const SpinLabel l(tl), j(tj);
      const auto kraus = projection_kraus(l, j);
      CMatrix comp = CMatrix::Zero(l.dim(), l.dim());
      for (const auto& a : kraus) comp += a.adjoint() * a;
      CHECK(max_abs(comp - CMatrix::Identity(l.dim(), l.dim())) < 1e-10);
      for (int rep = 0; rep < 10; ++rep) {
        const DensityMatrix rho = random_density(l, rng);
        const ChannelOutput primal = projection_channel(rho, j);
        CHECK(std::abs(primal.matrix.trace() - cplx(1.0)) < 1e-10);
        CHECK(max_abs(apply_kraus(kraus, rho.matrix(), l + j).matrix - primal.matrix) < 1e-10);
        check_spectrum(dense_projection_spectrum(rho, j), primal.spectrum.values(), 1e-10);
        const PureState psi = haar_state(l, rng);
        const SpectrumVector dual = SpectrumVector::of(projection_dual_gram(psi, j));
        const SpectrumVector prim = projection_channel(DensityMatrix::pure(psi), j).spectrum;
        check_spectrum(prim, dual.values(), 1e-10);
        CHECK(projection_entropy(psi, j) <= std::log(j.dim()) + 1e-10);
      }
    }
}

TEST_CASE("large-j dual Gram route") {
  Rng rng(10);
  const PureState psi = haar_state(SpinLabel(4), rng);
  const CMatrix g = projection_dual_gram(psi, SpinLabel(200));
  CHECK(g.rows() == 201);
  CHECK(std::abs(g.trace() - cplx(1.0)) < 1e-10);
  CHECK(SpectrumVector::of(g).values().back() >= 0.0);
  CHECK_THROWS_AS(projection_channel(DensityMatrix::maximally_mixed(SpinLabel(200)), SpinLabel(200)), ResourceError);
}

TEST_CASE("mixed inputs have larger projection entropy than pure ones") {
  for (int tl = 1; tl <= 3; ++tl) {
    const SpinLabel l(tl), j(2);
    const double mixed = projection_entropy(DensityMatrix::maximally_mixed(l), j);
    for (const auto& psi : haar_states(l, 50, tl)) CHECK(projection_entropy(psi, j) < mixed);
  }
}

TEST_CASE("shift inequality and convergence in j") {
  for (int tl = 1; tl <= 4; ++tl) {
    const SpinLabel l(tl);
    for (const auto& psi : haar_states(l, 10, 50 + tl)) {
      const double sw = wehrl_entropy(psi);
      double prev = 1e9;
      for (int tj : {1, 2, 10, 20}) {
        const SpinLabel j(tj);
        const double gap = sw - (projection_entropy(psi, j) + projection_shift(l, j));
        CHECK(gap >= -1e-8);
        if (tj != 1) CHECK(gap <= prev + 1e-10);
        prev = gap;
      }
      // Nearly closed by j = 100.
      CHECK(sw - (projection_entropy(psi, SpinLabel(200)) + projection_shift(l, SpinLabel(200))) < 0.05);
    }
  }
}

TEST_CASE("coherent projection outputs majorize random ones") {
  for (int tl = 1; tl <= 4; ++tl)
    for (int tj = 1; tj <= 3; ++tj) {
      const SpinLabel l(tl), j(tj);
      const SpectrumVector coh = SpectrumVector::of(projection_dual_gram(coherent_state(l, {0, 0}), j));
      double worst = -1;
      for (const auto& psi : haar_states(l, 500, 17 * tl + tj))
        worst = std::max(worst, majorization_deficit(coh, SpectrumVector::of(projection_dual_gram(psi, j))));
      CHECK(worst <= 1e-9);
    }
}

TEST_CASE("angular channel") {
  const SpinLabel h(1);
  const ChannelOutput up = angular_channel(DensityMatrix::pure(PureState::basis(h, 0)));
  CHECK(std::abs(up.matrix(0, 0) - cplx(1.0 / 3)) < 1e-14);
  CHECK(std::abs(up.matrix(1, 1) - cplx(2.0 / 3)) < 1e-14);
  CHECK(std::abs(up.matrix(0, 1)) < 1e-14);
  Rng rng(21);
  for (int t = 1; t <= 6; ++t) {
    const SpinLabel s(t);
    const DensityMatrix mixed = DensityMatrix::maximally_mixed(s);
    CHECK(max_abs(angular_channel(mixed).matrix - mixed.matrix()) < 1e-13);
    for (int rep = 0; rep < 100; ++rep) {
      const DensityMatrix rho = random_density(s, rng);
      const ChannelOutput out = angular_channel(rho);
      CHECK(std::abs(out.matrix.trace() - cplx(1.0)) < 1e-10);
      if (rep < 5) {
        CHECK(max_abs(angular_channel_ladder(rho).matrix - out.matrix) < 1e-12);
        const PureState psi = haar_state(s, rng);
        check_spectrum(angular_channel(DensityMatrix::pure(psi)).spectrum,
                       SpectrumVector::of(angular_gram(psi)).values(), 1e-10);
      }
    }
  }
  CHECK_THROWS_AS(angular_channel(DensityMatrix::maximally_mixed(SpinLabel(0))), DomainError);
}

TEST_CASE("angular Gram spectrum of coherent states") {
  Rng rng(2);
  for (int t = 1; t <= 10; ++t) {
    const SpinLabel s(t);
    const double l = s.value();
    const PureState c = coherent_state(s, uniform_direction(rng));
    const SpectrumVector raw = SpectrumVector::of(angular_gram(c) * s.casimir());
    check_spectrum(raw, {l * l, l, 0.0}, 1e-12);
    const SpectrumVector norm = SpectrumVector::of(angular_gram(c));
    check_spectrum(norm, {l / (l + 1), 1 / (l + 1), 0.0}, 1e-12);
    CHECK(norm.sum() == doctest::Approx(1.0).epsilon(1e-13));
    const auto tuple = coherent_angular_tuple(s);
    CHECK(tuple[0] == l * l);
    CHECK(tuple[1] == l);
  }
  check_spectrum(SpectrumVector::of(angular_gram(coherent_state(SpinLabel(1), {0.3, 0.2}))), {2.0 / 3, 1.0 / 3, 0},
                 1e-13);
}

TEST_CASE("channel covariance") {
  Rng rng(13);
  for (int t = 1; t <= 4; ++t) {
    const SpinLabel s(t);
    const DensityMatrix rho = random_density(s, rng);
    CHECK(channel_covariance_defect(ChannelKind::kProjection, rho, SphereDirection::north(), SpinLabel(2)) < 1e-13);
    for (int tj = 1; tj <= 3; ++tj)
      CHECK(channel_covariance_defect(ChannelKind::kProjection, rho, uniform_direction(rng), SpinLabel(tj)) < 1e-10);
    CHECK(channel_covariance_defect(ChannelKind::kAngular, rho, uniform_direction(rng)) < 1e-10);
    CHECK(channel_covariance_defect(ChannelKind::kProjection, rho, 0.4, 1.3, 2.2, SpinLabel(3)) < 1e-10);
    CHECK(channel_covariance_defect(ChannelKind::kAngular, rho, 0.4, 1.3, 2.2) < 1e-10);
  }
}
