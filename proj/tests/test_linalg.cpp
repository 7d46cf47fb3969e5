#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "bdlawson/linalg.hpp"
#include "test_support.hpp"

using namespace bdlawson;
using testing::random_matrix;
using testing::random_unit_vector;
using testing::random_vector;

namespace {

void check_qr_invariants(const ComplexMatrix& m, double tol_orth, double tol_resid) {
  ThinQr qr = thin_qr(m);
  const Index k = m.cols();
  REQUIRE(qr.q.rows() == m.rows());
  REQUIRE(qr.q.cols() == k);
  REQUIRE(qr.r.rows() == k);
  REQUIRE(qr.r.cols() == k);
  CHECK((qr.q.adjoint() * qr.q - ComplexMatrix::Identity(k, k)).norm() <= tol_orth);
  CHECK((qr.q * qr.r - m).norm() <= tol_resid * std::max(m.norm(), 1e-300));
  for (Index j = 0; j < k; ++j) {
    for (Index i = j + 1; i < k; ++i) CHECK(qr.r(i, j) == Complex(0.0, 0.0));
  }
}

}  // namespace

TEST_CASE("thin_qr of the identity is the identity up to column phases") {
  ComplexMatrix eye = ComplexMatrix::Identity(3, 3);
  ThinQr qr = thin_qr(eye);
  for (Index j = 0; j < 3; ++j) {
    CHECK(std::abs(std::abs(qr.r(j, j)) - 1.0) <= 1e-15);
    CHECK(std::abs(std::abs(qr.q(j, j)) - 1.0) <= 1e-15);
    for (Index i = 0; i < 3; ++i) {
      if (i != j) {
        CHECK(std::abs(qr.q(i, j)) <= 1e-15);
        CHECK(std::abs(qr.r(i, j)) <= 1e-15);
      }
    }
  }
}

TEST_CASE("thin_qr of a single column gives |R| = column norm") {
  ComplexMatrix m(3, 1);
  m << Complex(0, 0), Complex(3, 0), Complex(4, 0);
  ThinQr qr = thin_qr(m);
  CHECK(std::abs(std::abs(qr.r(0, 0)) - 5.0) <= 1e-14);
  CHECK((qr.q * qr.r - m).norm() <= 1e-14);
}

TEST_CASE("thin_qr invariants on random sizes including tall extremes") {
  std::mt19937_64 rng(20240811u);
  check_qr_invariants(random_matrix(rng, 5, 3), 1e-13, 1e-13);
  check_qr_invariants(random_matrix(rng, 40, 17), 1e-13, 1e-13);
  check_qr_invariants(random_matrix(rng, 333, 60), 1e-13, 1e-13);
  check_qr_invariants(random_matrix(rng, 64, 64), 1e-13, 1e-13);
  check_qr_invariants(random_matrix(rng, 20000, 100), 1e-13, 1e-13);
}

TEST_CASE("thin_qr rejects wide matrices, accepts empty") {
  std::mt19937_64 rng(7u);
  CHECK_THROWS_AS(thin_qr(random_matrix(rng, 2, 5)), ArgumentError);
  ThinQr qr = thin_qr(ComplexMatrix(4, 0));
  CHECK(qr.q.rows() == 4);
  CHECK(qr.q.cols() == 0);
  CHECK(qr.r.rows() == 0);
}

TEST_CASE("upper_triangular_condition_estimate") {
  ComplexMatrix r = ComplexMatrix::Zero(2, 2);
  r(0, 0) = Complex(8, 0);
  r(0, 1) = Complex(1, 1);
  r(1, 1) = Complex(0, 2);
  CHECK(upper_triangular_condition_estimate(r) == doctest::Approx(4.0));
  r(1, 1) = Complex(0, 0);
  CHECK(std::isinf(upper_triangular_condition_estimate(r)));
  CHECK(upper_triangular_condition_estimate(ComplexMatrix(0, 0)) == 1.0);
}

TEST_CASE("smallest_singular_pair on a padded diagonal matrix") {
  ComplexMatrix m = ComplexMatrix::Zero(4, 3);
  m(0, 0) = Complex(3, 0);
  m(1, 1) = Complex(1, 0);
  m(2, 2) = Complex(2, 0);
  SmallestSingularPair p = smallest_singular_pair(m);
  CHECK(p.sigma_min == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(p.sigma_max == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(p.sigma_gap == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(std::abs(p.right_vector[1]) - 1.0) <= 1e-13);
  CHECK(std::abs(p.right_vector[0]) <= 1e-13);
  CHECK(std::abs(p.right_vector[2]) <= 1e-13);
}

TEST_CASE("smallest_singular_pair flags an exactly zero column") {
  std::mt19937_64 rng(11u);
  ComplexMatrix m(5, 2);
  m.col(0) = random_vector(rng, 5);
  m.col(1).setZero();
  SmallestSingularPair p = smallest_singular_pair(m);
  CHECK(p.sigma_min <= 1e-15 * p.sigma_max);
  CHECK(std::abs(std::abs(p.right_vector[1]) - 1.0) <= 1e-12);
}

TEST_CASE("smallest_singular_pair single column gives the norm and infinite gap") {
  ComplexMatrix m(3, 1);
  m << Complex(0, 1), Complex(2, 0), Complex(0, -2);
  SmallestSingularPair p = smallest_singular_pair(m);
  CHECK(p.sigma_min == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(std::isinf(p.sigma_gap));
}

TEST_CASE("smallest_singular_pair agrees with the Hermitian pencil reference") {
  std::mt19937_64 rng(20240812u);
  for (int trial = 0; trial < 20; ++trial) {
    const Index rows = 12 + (trial % 4) * 9;
    const Index cols = 3 + (trial % 5);
    ComplexMatrix m = random_matrix(rng, rows, cols);
    SmallestSingularPair p = smallest_singular_pair(m);
    GevpMinimum g = hermitian_definite_gevp_min(
        ComplexMatrix(m.adjoint() * m), ComplexMatrix::Identity(cols, cols));
    CHECK(p.sigma_min * p.sigma_min ==
          doctest::Approx(g.lambda_min).epsilon(1e-12));
    // Minimality probes: no random direction beats sigma_min.
    for (int probe = 0; probe < 50; ++probe) {
      ComplexVector w = random_unit_vector(rng, cols);
      CHECK((m * w).norm() >= p.sigma_min * (1.0 - 1e-8));
    }
    CHECK(std::abs((m * p.right_vector).norm() - p.sigma_min) <=
          1e-10 * std::max(p.sigma_max, 1.0));
    CHECK(std::abs(p.right_vector.norm() - 1.0) <= 1e-13);
  }
}

TEST_CASE("solve_upper_triangular solves and reports singular diagonals") {
  ComplexMatrix r(2, 2);
  r << Complex(2, 0), Complex(1, 0), Complex(0, 0), Complex(4, 0);
  ComplexVector rhs(2);
  rhs << Complex(4, 0), Complex(8, 0);
  ComplexVector x = solve_upper_triangular(r, rhs);
  CHECK(std::abs(x[0] - Complex(1, 0)) <= 1e-15);
  CHECK(std::abs(x[1] - Complex(2, 0)) <= 1e-15);

  std::mt19937_64 rng(5150u);
  ComplexMatrix big = random_matrix(rng, 10, 10);
  ComplexMatrix rr = detail::qr_r_factor(big);
  ComplexVector b = random_vector(rng, 10);
  ComplexVector y = solve_upper_triangular(rr, b);
  CHECK((rr.triangularView<Eigen::Upper>() * y - b).norm() <= 1e-12 * b.norm());

  rr(3, 3) = Complex(1e-20, 0);
  try {
    solve_upper_triangular(rr, b);
    FAIL("expected SingularMatrixError");
  } catch (const SingularMatrixError& err) {
    CHECK(err.index() == 3);
    CHECK(err.magnitude() == doctest::Approx(1e-20));
  }
}

TEST_CASE("solve_upper_triangular honors an explicit floor") {
  ComplexMatrix r = ComplexMatrix::Identity(2, 2);
  r(1, 1) = Complex(1e-3, 0);
  ComplexVector rhs(2);
  rhs << Complex(1, 0), Complex(1, 0);
  CHECK_NOTHROW(solve_upper_triangular(r, rhs, 1e-6));
  CHECK_THROWS_AS(solve_upper_triangular(r, rhs, 1e-2), SingularMatrixError);
}

TEST_CASE("apply_complement_projector") {
  std::mt19937_64 rng(404u);
  ComplexMatrix m = random_matrix(rng, 9, 4);

  SUBCASE("zero-column Q returns the input unchanged") {
    ComplexMatrix p = apply_complement_projector(ComplexMatrix(9, 0), m);
    CHECK((p - m).norm() == 0.0);
  }
  SUBCASE("projecting Q's own range annihilates it, and P is idempotent") {
    ThinQr qr = thin_qr(random_matrix(rng, 9, 3));
    CHECK(apply_complement_projector(qr.q, ComplexMatrix(qr.q)).norm() <= 1e-13);
    ComplexMatrix once = apply_complement_projector(qr.q, m);
    CHECK((qr.q.adjoint() * once).norm() <= 1e-12 * std::max(m.norm(), 1.0));
    ComplexMatrix twice = apply_complement_projector(qr.q, once);
    CHECK((twice - once).norm() <= 1e-12 * std::max(m.norm(), 1.0));
  }
}

TEST_CASE("hermitian_definite_gevp_min fixed cases") {
  ComplexMatrix a = ComplexMatrix::Zero(3, 3);
  a(0, 0) = Complex(5, 0);
  a(1, 1) = Complex(2, 0);
  a(2, 2) = Complex(7, 0);
  GevpMinimum g = hermitian_definite_gevp_min(a, ComplexMatrix::Identity(3, 3));
  CHECK(g.lambda_min == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(std::abs(g.eigenvector[1]) - 1.0) <= 1e-13);
  CHECK(g.lambda_gap == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(g.lambda_max == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("hermitian_definite_gevp_min with Ah = Bh gives 1 even when singular") {
  std::mt19937_64 rng(606u);
  ComplexMatrix base = random_matrix(rng, 4, 2);
  ComplexMatrix psd = base * base.adjoint();  // rank 2, size 4
  GevpMinimum g = hermitian_definite_gevp_min(psd, psd);
  CHECK(g.lambda_min == doctest::Approx(1.0).epsilon(1e-10));
  const double vbv =
      std::real(Complex(g.eigenvector.adjoint() * (psd * g.eigenvector)));
  CHECK(vbv == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hermitian_definite_gevp_min residual and Rayleigh minimality") {
  std::mt19937_64 rng(707u);
  for (int trial = 0; trial < 10; ++trial) {
    const Index k = 3 + trial % 4;
    ComplexMatrix ga = random_matrix(rng, k + 2, k);
    ComplexMatrix gb = random_matrix(rng, k + 3, k);
    ComplexMatrix ah = ga.adjoint() * ga;
    ComplexMatrix bh = gb.adjoint() * gb;
    GevpMinimum g = hermitian_definite_gevp_min(ah, bh);
    const double ref = ah.norm() + std::abs(g.lambda_min) * bh.norm();
    CHECK((ah * g.eigenvector - g.lambda_min * (bh * g.eigenvector)).norm() <=
          1e-10 * ref);
    const double vbv =
        std::real(Complex(g.eigenvector.adjoint() * (bh * g.eigenvector)));
    CHECK(vbv == doctest::Approx(1.0).epsilon(1e-12));
    for (int probe = 0; probe < 30; ++probe) {
      ComplexVector v = random_vector(rng, k);
      const double quad = std::real(Complex(v.adjoint() * (bh * v)));
      if (quad <= 0.0) continue;
      v /= std::sqrt(quad);
      const double rayleigh = std::real(Complex(v.adjoint() * (ah * v)));
      CHECK(rayleigh >= g.lambda_min - 1e-9 * ah.norm());
    }
  }
}

TEST_CASE("hermitian_definite_gevp_min rejects indefinite Bh") {
  ComplexMatrix a = ComplexMatrix::Identity(2, 2);
  ComplexMatrix b = ComplexMatrix::Zero(2, 2);
  b(0, 0) = Complex(1, 0);
  b(1, 1) = Complex(-1, 0);
  CHECK_THROWS_AS(hermitian_definite_gevp_min(a, b), ArgumentError);
}

TEST_CASE("hermitian_definite_gevp_min on a semidefinite pencil") {
  ComplexMatrix b = ComplexMatrix::Zero(2, 2);
  b(0, 0) = Complex(1, 0);

  SUBCASE("diagonal Ah restricted to range(Bh)") {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = Complex(4, 0);
    GevpMinimum g = hermitian_definite_gevp_min(a, b);
    CHECK(g.lambda_min == doctest::Approx(4.0).epsilon(1e-12));
  }
  SUBCASE("Ah coupling range and null space has no finite eigenpair") {
    ComplexMatrix a(2, 2);
    a << Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0);
    CHECK_THROWS_AS(hermitian_definite_gevp_min(a, b), DegeneratePencilError);
  }
}

TEST_CASE("compensated_sum is exact for adversarial orderings") {
  RealVector v(4);
  v << 1.0, 1e100, 1.0, -1e100;
  CHECK(detail::compensated_sum(v) == 2.0);
  RealVector w = RealVector::Constant(20000, 1.0 / 20000.0);
  w[19999] = 1.0 - detail::compensated_sum(w.head(19999));
  CHECK(std::abs(detail::compensated_sum(w) - 1.0) <= 1e-16);
}
