#pragma once

#include <array>
#include <vector>

#include "klic/decision.hpp"
#include "klic/linalg.hpp"

namespace klic {

struct CjStatisticInput {
  cvec z;        // cell under test
  cmat s;        // training Gram sum z_k z_k†, positive definite
  cvec v;        // target steering
  cmat basis;    // N x q jammer subspace basis, columns independent of v
  int training_count = 0;  // K

  int subspace_dim() const noexcept { return static_cast<int>(basis.cols()); }
  void validate() const;
};

// The three GLR log-statistics, all of the form
//   (K+1) [ log(1 + z†S^{-1}z) - log(1 + residual_m) ]
// where residual_m removes the projection of the whitened cell onto the
// jammer subspace (m=1), the target direction (m=2), or both (m=3).
// Quadratic forms are evaluated through Cholesky solves; for m=3 the
// orthogonal-projector square root collapses to the projector itself, which
// reduces the whitened residual to the same solve machinery.
double cj_glr(const CjStatisticInput& in, int m);
std::array<double, 3> cj_glr_all(const CjStatisticInput& in);

// (2q + N^2, 2 + N^2, 2 + 2q + N^2)
std::array<int, 3> cj_param_counts(int q, int n);

// Scores for m = 1, 2, 3. BicT uses T = 2(K+1)N; BicK uses K.
std::vector<HypothesisScore> cj_scores(const cvec& z, const DataMatrix& training, const cvec& v,
                                       const cmat& basis, const PenaltyRule& rule);

}  // namespace klic
