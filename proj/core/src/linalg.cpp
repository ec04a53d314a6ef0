#include "klic/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace klic {

namespace {

bool all_finite(const cmat& a) {
  return a.allFinite();
}

double max_hermitian_defect(const cmat& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

HermitianMatrix HermitianMatrix::from_matrix(const cmat& a, double tol) {
  if (a.rows() != a.cols()) {
    throw invalid_input("HermitianMatrix: matrix is not square");
  }
  if (!all_finite(a)) {
    throw invalid_input("HermitianMatrix: non-finite entries");
  }
  if (a.size() > 0 && max_hermitian_defect(a) > tol) {
    throw invalid_input("HermitianMatrix: entries deviate from conjugate symmetry");
  }
  cmat sym = (a + a.adjoint()) / 2.0;
  return HermitianMatrix(std::move(sym));
}

HermitianMatrix HermitianMatrix::covariance(const cmat& a) {
  if (a.rows() != a.cols()) {
    throw invalid_input("HermitianMatrix: matrix is not square");
  }
  if (!all_finite(a)) {
    throw invalid_input("HermitianMatrix: non-finite entries");
  }
  cmat sym = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<cmat> es(sym, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw singular_matrix("HermitianMatrix: eigenvalue check failed");
  }
  const double top = es.eigenvalues().size() ? es.eigenvalues().maxCoeff() : 0.0;
  const double floor = -kPsdClampTol * std::max(top, 0.0);
  if (es.eigenvalues().size() && es.eigenvalues().minCoeff() < floor) {
    throw invalid_input("HermitianMatrix: covariance is not positive semidefinite");
  }
  return HermitianMatrix(std::move(sym));
}

EigResult hermitian_eig(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<cmat> es(a.mat());
  if (es.info() != Eigen::Success) {
    throw singular_matrix("hermitian_eig: decomposition failed");
  }
  const Eigen::Index n = a.dim();
  EigResult out;
  out.eigenvalues = es.eigenvalues().reverse();
  out.eigenvectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.eigenvectors.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  return out;
}

rvec hermitian_eigenvalues(const cmat& a) {
  Eigen::SelfAdjointEigenSolver<cmat> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw singular_matrix("hermitian_eigenvalues: decomposition failed");
  }
  return es.eigenvalues().reverse();
}

rvec psd_eigenvalues(const cmat& gram) {
  rvec ev = hermitian_eigenvalues(gram);
  const double top = ev.size() ? ev(0) : 0.0;
  const double floor = -kPsdClampTol * std::max(top, 0.0);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < floor) {
      throw degenerate_input("psd_eigenvalues: negative eigenvalue beyond tolerance");
    }
    if (ev(i) < 0.0) {
      ev(i) = 0.0;
    }
  }
  return ev;
}

cmat chol_solve(const HermitianMatrix& a, const cmat& b) {
  if (a.dim() != b.rows()) {
    throw invalid_input("chol_solve: dimension mismatch");
  }
  Eigen::LLT<cmat> llt(a.mat());
  if (llt.info() != Eigen::Success) {
    throw singular_matrix("chol_solve: matrix is not positive definite");
  }
  return llt.solve(b);
}

HermitianMatrix inv_sqrt(const HermitianMatrix& a) {
  EigResult eig = hermitian_eig(a);
  const double top = eig.eigenvalues.size() ? eig.eigenvalues(0) : 0.0;
  rvec inv_roots(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const double ev = eig.eigenvalues(i);
    if (ev <= kPsdClampTol * std::max(top, 0.0)) {
      throw singular_matrix("inv_sqrt: matrix is not positive definite");
    }
    inv_roots(i) = 1.0 / std::sqrt(ev);
  }
  cmat w = eig.eigenvectors * inv_roots.asDiagonal() * eig.eigenvectors.adjoint();
  return HermitianMatrix::from_matrix(w, 1e-9);
}

}  // namespace klic
