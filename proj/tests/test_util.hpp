#pragma once

#include <klic/linalg.hpp>
#include <klic/rng.hpp>

namespace testutil {

using klic::cmat;
using klic::cplx;
using klic::cvec;

inline cmat random_cmat(klic::SeededRng& rng, int rows, int cols) {
  cmat a(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      a(i, j) = rng.cnormal();
    }
  }
  return a;
}

inline cvec random_cvec(klic::SeededRng& rng, int n) {
  cvec v(n);
  for (int i = 0; i < n; ++i) {
    v(i) = rng.cnormal();
  }
  return v;
}

inline cmat random_hermitian(klic::SeededRng& rng, int n) {
  const cmat a = random_cmat(rng, n, n);
  return (a + a.adjoint()) / 2.0;
}

inline cmat random_pd(klic::SeededRng& rng, int n, double ridge = 0.5) {
  const cmat a = random_cmat(rng, n, n);
  return a * a.adjoint() + ridge * cmat::Identity(n, n);
}

inline cmat random_unitary(klic::SeededRng& rng, int n) {
  const cmat a = random_cmat(rng, n, n);
  Eigen::HouseholderQR<cmat> qr(a);
  return qr.householderQ() * cmat::Identity(n, n);
}

inline double rel_err(double got, double want) {
  const double scale = std::max({std::abs(got), std::abs(want), 1e-300});
  return std::abs(got - want) / scale;
}

}  // namespace testutil
