#pragma once

#include <vector>

#include "klic/decision.hpp"
#include "klic/linalg.hpp"

namespace klic {

struct NljStatisticInput {
  std::vector<double> gram_eigenvalues;  // eigenvalues of Z Z†, descending, >= 0
  int sample_count = 0;                  // K
  int max_order = 0;                     // N_J

  int n_channels() const noexcept { return static_cast<int>(gram_eigenvalues.size()); }
  void validate() const;
};

// GLR log-statistic for rank order m, computed in log space:
//   lambda_m = -K(N-m) log(tail mean) - K sum_{i<=m} log(gamma_i / K)
//              + NK log(grand mean)
// with tail mean = sum_{i>m} gamma_i / (K(N-m)) and
// grand mean = sum_i gamma_i / (NK).
double nlj_glr(const NljStatisticInput& in, int m);

// All orders m = 1..N_J with shared partial sums.
std::vector<double> nlj_glr_all(const NljStatisticInput& in);

// p = m(2N - m) + 1
int nlj_param_count(int m, int n);

// Scores for m = 1..max_order from the eigenvalues of Z Z†. The BicT rule
// uses T = 2KN; BicK uses K.
std::vector<HypothesisScore> nlj_scores(const DataMatrix& z, const PenaltyRule& rule,
                                        int max_order);

}  // namespace klic
