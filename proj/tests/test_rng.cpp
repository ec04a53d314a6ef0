#include <doctest.h>

#include <klic/rng.hpp>

#include "test_util.hpp"

using namespace klic;

TEST_SUITE_BEGIN("core-linalg");

TEST_CASE("identical (seed, stream) pairs replay bit-identically") {
  SeededRng a(42, 7);
  SeededRng b(42, 7);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.normal() == b.normal());
    CHECK(a.uniform() == b.uniform());
    CHECK(a.cnormal() == b.cnormal());
  }
}

TEST_CASE("distinct streams differ") {
  SeededRng a(42, 0);
  SeededRng b(42, 1);
  int equal = 0;
  for (int i = 0; i < 32; ++i) {
    equal += a.normal() == b.normal();
  }
  CHECK(equal < 4);
}

TEST_CASE("derive_seed separates stages") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(123, 45) == derive_seed(123, 45));
}

TEST_CASE("sample_cn with a zero covariance returns the mean exactly") {
  SeededRng rng(7, 0);
  cvec mean(3);
  mean << cplx(1, 2), cplx(-3, 0), cplx(0, 5);
  const cvec x = sample_cn(mean, HermitianMatrix::covariance(cmat::Zero(3, 3)), rng);
  CHECK(x == mean);
}

TEST_CASE("sample_cn is deterministic under a fixed seed") {
  const HermitianMatrix cov = HermitianMatrix::covariance(cmat::Identity(4, 4));
  const cvec mean = cvec::Zero(4);
  SeededRng a(99, 3);
  SeededRng b(99, 3);
  const cvec x = sample_cn(mean, cov, a);
  const cvec y = sample_cn(mean, cov, b);
  CHECK(x == y);
}

TEST_CASE("sample_cn moments match CN(0, I)") {
  const int n = 16;
  const int draws = 100000;
  const HermitianMatrix cov = HermitianMatrix::covariance(cmat::Identity(n, n));
  CnSampler sampler(cvec::Zero(n), cov);
  cvec mean = cvec::Zero(n);
  cmat second = cmat::Zero(n, n);
  SeededRng rng(2024, 0);
  for (int t = 0; t < draws; ++t) {
    const cvec x = sampler.draw(rng);
    mean += x;
    second += x * x.adjoint();
  }
  mean /= draws;
  second /= draws;
  for (int i = 0; i < n; ++i) {
    CHECK(std::abs(mean(i)) < 0.02);
  }
  CHECK((second - cmat::Identity(n, n)).norm() / cmat::Identity(n, n).norm() < 0.05);
}

TEST_CASE("singular covariances draw inside their range space") {
  cvec dir(3);
  dir << cplx(1, 0), cplx(0, 1), cplx(1, 1);
  dir.normalize();
  const cmat cov = dir * dir.adjoint();
  CnSampler sampler(cvec::Zero(3), HermitianMatrix::covariance(cov));
  SeededRng rng(55, 0);
  for (int t = 0; t < 16; ++t) {
    const cvec x = sampler.draw(rng);
    // component orthogonal to dir vanishes up to the square root of the
    // eigenvalue round-off
    const cvec residual = x - dir * (dir.dot(x));
    CHECK(residual.norm() < 1e-7 * (1.0 + x.norm()));
  }
}

TEST_CASE("sample_cn rejects mismatched dimensions") {
  SeededRng rng(1, 0);
  CHECK_THROWS_AS(
      sample_cn(cvec::Zero(3), HermitianMatrix::covariance(cmat::Identity(4, 4)), rng),
      invalid_input);
}

TEST_SUITE_END();
