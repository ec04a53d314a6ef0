#pragma once

#include <Eigen/Dense>
#include <complex>

#include "klic/errors.hpp"

namespace klic {

using cplx = std::complex<double>;
using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;
using rvec = Eigen::VectorXd;

// Snapshots stacked as columns of common dimension N.
using DataMatrix = cmat;

// Entrywise tolerance for A == A† checks.
inline constexpr double kHermitianTol = 1e-12;
// Eigenvalues in [-kPsdClampTol * gamma_max, 0) are treated as zero.
inline constexpr double kPsdClampTol = 1e-10;

/// Validated Hermitian matrix. Covariances, Gram matrices and projectors are
/// carried as this type so downstream code can assume symmetry and, for the
/// covariance factory, positive semidefiniteness within tolerance.
class HermitianMatrix {
 public:
  // Requires finite entries and a[i][j] == conj(a[j][i]) within tol (absolute).
  static HermitianMatrix from_matrix(const cmat& a, double tol = kHermitianTol);

  // Symmetrizes (A + A†)/2 and additionally requires every eigenvalue to be
  // >= -kPsdClampTol * max eigenvalue. Intended for covariances and Gram
  // matrices assembled in floating point.
  static HermitianMatrix covariance(const cmat& a);

  const cmat& mat() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

 private:
  explicit HermitianMatrix(cmat m) : m_(std::move(m)) {}
  cmat m_;
};

struct EigResult {
  rvec eigenvalues;   // descending
  cmat eigenvectors;  // columns ordered to match
};

// Full spectral decomposition, eigenvalues descending.
EigResult hermitian_eig(const HermitianMatrix& a);

// Eigenvalues only (descending). `a` must be Hermitian; not revalidated.
rvec hermitian_eigenvalues(const cmat& a);

// Descending eigenvalues of a PSD matrix with tiny negatives clamped to zero.
// Throws degenerate_input if an eigenvalue is negative beyond the clamp band.
rvec psd_eigenvalues(const cmat& gram);

// Solves A X = B for positive definite A via Cholesky.
cmat chol_solve(const HermitianMatrix& a, const cmat& b);

// A^{-1/2} for positive definite A, computed in the eigenbasis.
HermitianMatrix inv_sqrt(const HermitianMatrix& a);

}  // namespace klic
