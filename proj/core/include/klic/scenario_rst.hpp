#pragma once

#include <vector>

#include "klic/decision.hpp"
#include "klic/linalg.hpp"

namespace klic {

// Contiguous window of range bins, 1-based start, bins start..start+size-1.
struct WindowHypothesis {
  int m = 0;  // 1-based index in the enumeration below
  int start = 0;
  int size = 0;
};

// Size-major, start-ascending enumeration: all size-1 windows (start 1..L),
// then size-2 (start 1..L-1), ..., then the single size-L window. Total
// count L(L+1)/2. This ordering is the wire-format contract for histogram
// and report outputs (for L=10, bins {4,5} carry index m=14).
std::vector<WindowHypothesis> enumerate_windows(int l);

// Inverse of the enumeration; throws invalid_input for an impossible window.
int window_index(int l, int start, int size);

struct RstStatisticInput {
  DataMatrix window;    // N x L cells under test
  DataMatrix training;  // N x K, Gram must be positive definite (K >= N)
  cvec v;               // target steering

  int window_length() const noexcept { return static_cast<int>(window.cols()); }
  int training_count() const noexcept { return static_cast<int>(training.cols()); }
  void validate() const;
};

// Determinant-form GLR for one window:
//   lambda = (L+K) { log det S0 - log det [ sum_{l in w} r_l r_l† + S1 ] }
// with S0 = sum_l z_l z_l† + S, S1 = sum_{l not in w} z_l z_l† + S and
// r_l = z_l - (v† S1^{-1} z_l)/(v† S1^{-1} v) v. Log-determinants come from
// Cholesky diagonals.
double rst_glr(const RstStatisticInput& in, const WindowHypothesis& w);

// All windows of enumerate_windows(L), sharing the per-window partial sums.
std::vector<double> rst_glr_all(const RstStatisticInput& in);

// p = 2|window| + 1 + N^2
int rst_param_count(int window_size, int n);

// One score per enumerated window. BicT uses T = 2(L+K)N; BicK uses K.
std::vector<HypothesisScore> rst_scores(const RstStatisticInput& in, const PenaltyRule& rule);

}  // namespace klic
