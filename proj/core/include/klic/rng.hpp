#pragma once

#include <cstdint>
#include <random>

#include "klic/linalg.hpp"

namespace klic {

// Deterministic child-seed derivation so experiment stages (calibration,
// sweep points, histogram rows) consume provably disjoint streams.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt);

/// One reproducible random stream, identified by (base_seed, stream_index).
/// Streams are cheap value types; Monte Carlo code creates one per trial so
/// results never depend on worker count or scheduling.
class SeededRng {
 public:
  SeededRng(std::uint64_t base_seed, std::uint64_t stream_index);

  double uniform();  // U[0, 1)
  double normal();   // N(0, 1)
  cplx cnormal();    // circular complex normal: re, im ~ N(0, 1/2) i.i.d.

  std::uint64_t base_seed() const noexcept { return base_; }
  std::uint64_t stream_index() const noexcept { return stream_; }

 private:
  std::uint64_t base_;
  std::uint64_t stream_;
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Draws x ~ CN(mean, cov). The PSD factor C with cov = C C† is computed once
/// at construction (Cholesky when positive definite, eigenvalue square root
/// with clamping otherwise), so per-draw cost is one matrix-vector product.
class CnSampler {
 public:
  CnSampler(cvec mean, const HermitianMatrix& cov);

  cvec draw(SeededRng& rng) const;
  Eigen::Index dim() const noexcept { return mean_.size(); }

 private:
  cvec mean_;
  cmat factor_;
};

// One-shot convenience wrapper over CnSampler.
cvec sample_cn(const cvec& mean, const HermitianMatrix& cov, SeededRng& rng);

}  // namespace klic
