#include "klic/rng.hpp"

#include <cmath>

namespace klic {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
  return splitmix64(splitmix64(base) ^ splitmix64(salt ^ 0xD1B54A32D192ED03ULL));
}

SeededRng::SeededRng(std::uint64_t base_seed, std::uint64_t stream_index)
    : base_(base_seed),
      stream_(stream_index),
      gen_(splitmix64(splitmix64(base_seed) ^ splitmix64(~stream_index))) {}

double SeededRng::uniform() {
  return std::generate_canonical<double, 53>(gen_);
}

double SeededRng::normal() {
  return normal_(gen_);
}

cplx SeededRng::cnormal() {
  // re, im ~ N(0, 1/2) so E|w|^2 = 1
  const double re = normal_(gen_);
  const double im = normal_(gen_);
  return cplx(re * M_SQRT1_2, im * M_SQRT1_2);
}

CnSampler::CnSampler(cvec mean, const HermitianMatrix& cov) : mean_(std::move(mean)) {
  if (mean_.size() != cov.dim()) {
    throw invalid_input("CnSampler: mean/covariance dimension mismatch");
  }
  Eigen::LLT<cmat> llt(cov.mat());
  if (llt.info() == Eigen::Success) {
    factor_ = llt.matrixL();
    return;
  }
  // Semidefinite covariance: eigenvalue square root with the PSD clamp.
  EigResult eig = hermitian_eig(cov);
  const double top = eig.eigenvalues.size() ? std::max(eig.eigenvalues(0), 0.0) : 0.0;
  rvec roots(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    double ev = eig.eigenvalues(i);
    if (ev < -kPsdClampTol * top) {
      throw invalid_input("CnSampler: covariance is not positive semidefinite");
    }
    roots(i) = std::sqrt(std::max(ev, 0.0));
  }
  factor_ = eig.eigenvectors * roots.asDiagonal();
}

cvec CnSampler::draw(SeededRng& rng) const {
  cvec w(factor_.cols());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    w(i) = rng.cnormal();
  }
  return mean_ + factor_ * w;
}

cvec sample_cn(const cvec& mean, const HermitianMatrix& cov, SeededRng& rng) {
  return CnSampler(mean, cov).draw(rng);
}

}  // namespace klic
