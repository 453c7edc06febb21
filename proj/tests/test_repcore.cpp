#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "test_helpers.hpp"
#include "wehrl/coherent.hpp"
#include "wehrl/errors.hpp"
#include "wehrl/repcore.hpp"
#include "wehrl/sampling.hpp"

using namespace wehrl;
using testing_util::max_abs;

namespace testing_util {
CMatrix expi(const CMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  CVector ph(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) ph(i) = std::exp(cplx(0, -t * es.eigenvalues()(i)));
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}
}  // namespace testing_util

namespace {

// CG by diagonalizing total L^2 in the fixed-M block of the product space.
double brute_cg(SpinLabel l1, SpinLabel l2, SpinLabel total, int twice_m1, int twice_m2, int twice_M) {
  if (twice_m1 + twice_m2 != twice_M) return 0.0;
  const Generators g1 = generators(l1), g2 = generators(l2);
  const int d1 = l1.dim(), d2 = l2.dim();
  const CMatrix i1 = CMatrix::Identity(d1, d1), i2 = CMatrix::Identity(d2, d2);
  CMatrix l2tot = CMatrix::Zero(d1 * d2, d1 * d2);
  for (auto [a, b] : {std::pair{&g1.l1, &g2.l1}, std::pair{&g1.l2, &g2.l2}, std::pair{&g1.l3, &g2.l3}}) {
    const CMatrix s = kron(*a, i2) + kron(i1, *b);
    l2tot += s * s;
  }
  std::vector<int> rows;
  for (int k1 = 0; k1 < d1; ++k1)
    for (int k2 = 0; k2 < d2; ++k2)
      if ((l1.twice() - 2 * k1) + (l2.twice() - 2 * k2) == twice_M) rows.push_back(k1 * d2 + k2);
  CMatrix block(rows.size(), rows.size());
  for (size_t a = 0; a < rows.size(); ++a)
    for (size_t b = 0; b < rows.size(); ++b) block(a, b) = l2tot(rows[a], rows[b]);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(block);
  const double target = total.casimir();
  for (Eigen::Index c = 0; c < es.eigenvalues().size(); ++c) {
    if (std::abs(es.eigenvalues()(c) - target) > 1e-8) continue;
    CVector v = es.eigenvectors().col(c);
    // Magnitude only; signs are covered by the explicit reference values.
    const int want_k1 = (l1.twice() - twice_m1) / 2, want_k2 = (l2.twice() - twice_m2) / 2;
    for (size_t a = 0; a < rows.size(); ++a)
      if (rows[a] == want_k1 * d2 + want_k2) return std::abs(v(a));
  }
  return NAN;
}

}  // namespace

TEST_CASE("generators: spin-1/2 matrices and su(2) algebra") {
  const Generators g = generators(SpinLabel(1));
  CHECK(std::abs(g.lz(0, 0) - cplx(0.5)) < 1e-15);
  CHECK(std::abs(g.lz(1, 1) - cplx(-0.5)) < 1e-15);
  for (int t = 0; t <= 12; ++t) {
    const SpinLabel s(t);
    const Generators h = generators(s);
    const int d = s.dim();
    CHECK(max_abs(h.lplus * h.lminus - h.lminus * h.lplus - 2.0 * h.lz) < 1e-13);
    CHECK(max_abs(h.l1 * h.l2 - h.l2 * h.l1 - cplx(0, 1) * h.l3) < 1e-13);
    CHECK(max_abs(h.l1 * h.l1 + h.l2 * h.l2 + h.l3 * h.l3 - s.casimir() * CMatrix::Identity(d, d)) < 1e-12);
  }
}

TEST_CASE("spin labels parse half-integers") {
  CHECK(SpinLabel::parse("3/2").twice() == 3);
  CHECK(SpinLabel::parse("1.5").twice() == 3);
  CHECK(SpinLabel::parse("2").twice() == 4);
  CHECK(SpinLabel::parse("4/1").twice() == 8);
  CHECK_THROWS_AS(SpinLabel::parse("1/3"), DomainError);
  CHECK_THROWS_AS(SpinLabel::parse("0.3"), DomainError);
  CHECK_THROWS_AS(SpinLabel::parse("x"), DomainError);
  CHECK_THROWS_AS(SpinLabel(-1), DomainError);
  CHECK(SpinLabel(3).to_string() == "3/2");
}

TEST_CASE("state invariants are enforced") {
  CVector v(2);
  v << 1.0, 1.0;
  CHECK_THROWS_AS(PureState(SpinLabel(1), v), DomainError);
  CHECK_NOTHROW(PureState::normalized(SpinLabel(1), v));
  CHECK_THROWS_AS(PureState::normalized(SpinLabel(1), CVector::Zero(2)), DomainError);
  CMatrix m = CMatrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix(SpinLabel(1), m), DomainError);
  CMatrix neg(2, 2);
  neg << 1.5, 0, 0, -0.5;
  CHECK_THROWS_AS(DensityMatrix(SpinLabel(1), neg), DomainError);
}

TEST_CASE("clebsch_gordan reference values") {
  const SpinLabel h(1);
  CHECK(clebsch_gordan(h, h, SpinLabel(2), 1, 1, 2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(clebsch_gordan(h, h, SpinLabel(0), 1, -1, 0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(clebsch_gordan(h, h, SpinLabel(0), -1, 1, 0) == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(clebsch_gordan(h, h, SpinLabel(2), 1, 1, 0) == 0.0);
  // <1 1; 1 -1 | 2 0> = 1/sqrt(6)
  CHECK(clebsch_gordan(SpinLabel(2), SpinLabel(2), SpinLabel(4), 2, -2, 0) ==
        doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-13));
  CHECK_THROWS_AS(clebsch_gordan(h, h, SpinLabel(4), 1, 1, 2), DomainError);
  CHECK_THROWS_AS(clebsch_gordan(h, h, SpinLabel(2), 3, 1, 4), DomainError);
  CHECK_THROWS_AS(clebsch_gordan(h, h, SpinLabel(2), 1, 0, 1), DomainError);
}

TEST_CASE("clebsch_gordan magnitudes match brute-force diagonalization") {
  for (int t1 = 0; t1 <= 4; ++t1)
    for (int t2 = 0; t2 <= 3; ++t2)
      for (int tj = std::abs(t1 - t2); tj <= t1 + t2; tj += 2)
        for (int m1 = -t1; m1 <= t1; m1 += 2)
          for (int m2 = -t2; m2 <= t2; m2 += 2) {
            const int mm = m1 + m2;
            if (std::abs(mm) > tj) continue;
            const double lib = clebsch_gordan(SpinLabel(t1), SpinLabel(t2), SpinLabel(tj), m1, m2, mm);
            const double ref = brute_cg(SpinLabel(t1), SpinLabel(t2), SpinLabel(tj), m1, m2, mm);
            CHECK(std::abs(std::abs(lib) - ref) < 1e-12);
          }
}

TEST_CASE("coupling columns are orthonormal and are total-L^2 eigenvectors") {
  for (auto [t1, t2] : {std::pair{2, 2}, {3, 1}, {6, 4}, {8, 200}}) {
    const SpinLabel l1(t1), l2(t2);
    const SpinLabel tot = l1 + l2;
    const CMatrix v = CouplingTable(l1, l2, tot).isometry();
    CHECK(max_abs(v.adjoint() * v - CMatrix::Identity(v.cols(), v.cols())) < 1e-12);
    if (t2 < 10) {
      const Generators g1 = generators(l1), g2 = generators(l2);
      const CMatrix i1 = CMatrix::Identity(l1.dim(), l1.dim()), i2 = CMatrix::Identity(l2.dim(), l2.dim());
      const CMatrix lm = kron(g1.lminus, i2) + kron(i1, g2.lminus);
      // Lowering maps column k to a multiple of column k+1.
      for (int k = 0; k + 1 < tot.dim(); ++k) {
        const double m = tot.m_at(k);
        const double c = std::sqrt(tot.casimir() - m * (m - 1));
        CHECK(max_abs(lm * v.col(k) - c * v.col(k + 1)) < 1e-12);
      }
    }
  }
}

TEST_CASE("symmetric projector") {
  for (auto [tl, tj] : {std::pair{1, 1}, {2, 3}, {4, 2}, {3, 5}}) {
    const SpinLabel l(tl), j(tj);
    const CMatrix p = symmetric_projector(l, j);
    CHECK(max_abs(p * p - p) < 1e-12);
    CHECK(max_abs(p - p.adjoint()) < 1e-12);
    CHECK(std::abs(p.trace() - cplx((l + j).dim())) < 1e-12);
    // Covariance under simultaneous rotation.
    const CMatrix u = kron(rotation_matrix(l, 0.3, 1.1, -0.7), rotation_matrix(j, 0.3, 1.1, -0.7));
    CHECK(max_abs(u * p * u.adjoint() - p) < 1e-11);
  }
  // l = j = 1/2: partial trace over the second factor is (3/2) 1.
  const CMatrix p = symmetric_projector(SpinLabel(1), SpinLabel(1));
  CMatrix red = CMatrix::Zero(2, 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) red(a, b) += p(a * 2 + c, b * 2 + c);
  CHECK(max_abs(red - 1.5 * CMatrix::Identity(2, 2)) < 1e-14);
}

TEST_CASE("rotations") {
  Rng rng(3);
  for (int t = 0; t <= 8; ++t) {
    const SpinLabel s(t);
    const PureState top = PureState::basis(s, 0);
    CHECK(max_abs(rotate(top, SphereDirection::north()).amplitudes() - top.amplitudes()) < 1e-15);
    for (int rep = 0; rep < 5; ++rep) {
      const SphereDirection d = uniform_direction(rng);
      CHECK(max_abs(rotate(top, d).amplitudes() - coherent_state(s, d).amplitudes()) < 1e-12);
      const CMatrix u = rotation_matrix(s, d);
      CHECK(max_abs(u.adjoint() * u - CMatrix::Identity(s.dim(), s.dim())) < 1e-12);
      // Matches exp(-i phi Lz) exp(-i theta L2) computed independently.
      const Generators g = generators(s);
      const CMatrix ref = testing_util::expi(g.lz, d.phi) * testing_util::expi(g.l2, d.theta);
      CHECK(max_abs(u - ref) < 1e-11);
      const DensityMatrix rho = random_density(s, rng);
      const DensityMatrix r2 = rotate(rho, d);
      Eigen::SelfAdjointEigenSolver<CMatrix> a(rho.matrix()), b(r2.matrix());
      CHECK((a.eigenvalues() - b.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("sphere directions") {
  const SphereDirection d = SphereDirection::normalized(-0.5, 7.0);
  CHECK(d.theta == doctest::Approx(0.5));
  CHECK(d.phi == doctest::Approx(7.0 + kPi - 2 * kPi));
  CHECK(geodesic_angle(SphereDirection::north(), SphereDirection::south()) == doctest::Approx(kPi));
  const SphereDirection e{1.0, 2.0};
  CHECK(geodesic_angle(e, e.antipode()) == doctest::Approx(kPi));
  CHECK(geodesic_angle(e, SphereDirection::from_unit_vector(e.unit_vector())) < 1e-7);
}
