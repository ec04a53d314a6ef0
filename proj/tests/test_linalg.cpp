#include <doctest.h>

#include <klic/linalg.hpp>

#include "test_util.hpp"

using namespace klic;

TEST_SUITE_BEGIN("core-linalg");

TEST_CASE("hermitian_eig on the identity") {
  const HermitianMatrix a = HermitianMatrix::from_matrix(cmat::Identity(4, 4));
  const EigResult eig = hermitian_eig(a);
  for (int i = 0; i < 4; ++i) {
    CHECK(eig.eigenvalues(i) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("hermitian_eig on diag(3,1)") {
  cmat a = cmat::Zero(2, 2);
  a(0, 0) = 3.0;
  a(1, 1) = 1.0;
  const EigResult eig = hermitian_eig(HermitianMatrix::from_matrix(a));
  CHECK(eig.eigenvalues(0) == doctest::Approx(3.0));
  CHECK(eig.eigenvalues(1) == doctest::Approx(1.0));
  // eigenvectors are a permutation of the identity columns
  CHECK(std::abs(eig.eigenvectors(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(eig.eigenvectors(1, 1)) == doctest::Approx(1.0));
  CHECK(std::abs(eig.eigenvectors(1, 0)) == doctest::Approx(0.0));
}

TEST_CASE("hermitian_eig reconstructs a random 16x16 matrix") {
  SeededRng rng(101, 0);
  const cmat a = testutil::random_hermitian(rng, 16);
  const EigResult eig = hermitian_eig(HermitianMatrix::from_matrix(a, 1e-9));
  const cmat rebuilt =
      eig.eigenvectors * eig.eigenvalues.asDiagonal() * eig.eigenvectors.adjoint();
  CHECK((rebuilt - a).norm() / a.norm() < 1e-9);
  // descending order
  for (int i = 1; i < 16; ++i) {
    CHECK(eig.eigenvalues(i) <= eig.eigenvalues(i - 1));
  }
}

TEST_CASE("eigenvalue sum matches the trace") {
  SeededRng rng(102, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + rep % 9;
    const cmat a = testutil::random_hermitian(rng, n);
    const EigResult eig = hermitian_eig(HermitianMatrix::from_matrix(a, 1e-9));
    const double trace = std::real(a.trace());
    CHECK(testutil::rel_err(eig.eigenvalues.sum(), trace) < 1e-9);
  }
}

TEST_CASE("non-finite entries are rejected") {
  cmat a = cmat::Identity(3, 3);
  a(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(HermitianMatrix::from_matrix(a), invalid_input);
}

TEST_CASE("non-hermitian input is rejected") {
  cmat a = cmat::Identity(3, 3);
  a(0, 1) = cplx(0.0, 1e-6);
  CHECK_THROWS_AS(HermitianMatrix::from_matrix(a), invalid_input);
  CHECK_NOTHROW(HermitianMatrix::from_matrix(a, 1e-5));
}

TEST_CASE("covariance factory rejects indefinite matrices") {
  cmat a = cmat::Identity(3, 3);
  a(2, 2) = -0.5;
  CHECK_THROWS_AS(HermitianMatrix::covariance(a), invalid_input);
  // tiny negative curvature within the clamp band is accepted
  cmat b = cmat::Identity(3, 3);
  b(2, 2) = -1e-12;
  CHECK_NOTHROW(HermitianMatrix::covariance(b));
}

TEST_CASE("chol_solve identities") {
  SeededRng rng(103, 0);
  const cvec b = testutil::random_cvec(rng, 5);
  const HermitianMatrix eye = HermitianMatrix::from_matrix(cmat::Identity(5, 5));
  CHECK((chol_solve(eye, b) - b).norm() < 1e-12);
  const HermitianMatrix twice = HermitianMatrix::from_matrix(2.0 * cmat::Identity(5, 5));
  CHECK((chol_solve(twice, b) - b / 2.0).norm() < 1e-12);
}

TEST_CASE("chol_solve residual on a random positive definite system") {
  SeededRng rng(104, 0);
  const cmat a = testutil::random_pd(rng, 16);
  const cmat b = testutil::random_cmat(rng, 16, 3);
  const cmat x = chol_solve(HermitianMatrix::from_matrix(a, 1e-9), b);
  CHECK((a * x - b).norm() / b.norm() < 1e-9);
}

TEST_CASE("chol_solve rejects singular systems") {
  cmat a = cmat::Zero(3, 3);
  a(0, 0) = 1.0;
  const cmat b = cmat::Identity(3, 3);
  CHECK_THROWS_AS(chol_solve(HermitianMatrix::from_matrix(a), b), singular_matrix);
}

TEST_CASE("inv_sqrt basics") {
  const HermitianMatrix eye = HermitianMatrix::from_matrix(cmat::Identity(4, 4));
  CHECK((inv_sqrt(eye).mat() - cmat::Identity(4, 4)).norm() < 1e-12);

  cmat d = cmat::Zero(2, 2);
  d(0, 0) = 4.0;
  d(1, 1) = 9.0;
  const cmat w = inv_sqrt(HermitianMatrix::from_matrix(d)).mat();
  CHECK(std::abs(w(0, 0) - cplx(0.5, 0.0)) < 1e-12);
  CHECK(std::abs(w(1, 1) - cplx(1.0 / 3.0, 0.0)) < 1e-12);
}

TEST_CASE("inv_sqrt inverts and commutes on a random positive definite matrix") {
  SeededRng rng(105, 0);
  const cmat a = testutil::random_pd(rng, 16);
  const HermitianMatrix ha = HermitianMatrix::from_matrix(a, 1e-9);
  const cmat w = inv_sqrt(ha).mat();
  CHECK((w * a * w - cmat::Identity(16, 16)).norm() < 1e-9);
  CHECK((w * a - a * w).norm() / a.norm() < 1e-9);
}

TEST_CASE("inv_sqrt rejects semidefinite input") {
  cmat a = cmat::Zero(3, 3);
  a(0, 0) = 1.0;
  a(1, 1) = 1.0;
  CHECK_THROWS_AS(inv_sqrt(HermitianMatrix::from_matrix(a)), singular_matrix);
}

TEST_CASE("psd_eigenvalues clamps the round-off band only") {
  cmat a = cmat::Identity(3, 3);
  a(2, 2) = -1e-13;
  const rvec ev = psd_eigenvalues(a);
  CHECK(ev(2) == 0.0);
  a(2, 2) = -1.0;
  CHECK_THROWS_AS(psd_eigenvalues(a), degenerate_input);
}

TEST_SUITE_END();
