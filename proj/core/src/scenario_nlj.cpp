#include "klic/scenario_nlj.hpp"

#include <cmath>

namespace klic {

void NljStatisticInput::validate() const {
  const int n = n_channels();
  if (n < 2 || sample_count < 1) {
    throw invalid_input("nlj statistic: need N >= 2 and K >= 1");
  }
  if (max_order < 1 || max_order >= n) {
    throw invalid_input("nlj statistic: max order must lie in [1, N-1]");
  }
  for (int i = 0; i < n; ++i) {
    const double g = gram_eigenvalues[i];
    if (!std::isfinite(g) || g < 0.0) {
      throw invalid_input("nlj statistic: eigenvalues must be finite and nonnegative");
    }
    if (i > 0 && g > gram_eigenvalues[i - 1]) {
      throw invalid_input("nlj statistic: eigenvalues must be sorted descending");
    }
  }
}

namespace {

double glr_from_sums(const NljStatisticInput& in, int m, double total, double log_top_sum,
                     double tail_sum) {
  const double k = static_cast<double>(in.sample_count);
  const double n = static_cast<double>(in.n_channels());
  if (tail_sum <= 0.0) {
    throw degenerate_input("nlj_glr: tail eigenvalue sum is zero");
  }
  const double tail_mean = tail_sum / (k * (n - m));
  const double grand_mean = total / (n * k);
  return -k * (n - m) * std::log(tail_mean) - k * log_top_sum +
         n * k * std::log(grand_mean);
}

}  // namespace

double nlj_glr(const NljStatisticInput& in, int m) {
  in.validate();
  if (m < 1 || m > in.max_order) {
    throw invalid_input("nlj_glr: order out of range");
  }
  const int n = in.n_channels();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    total += in.gram_eigenvalues[i];
  }
  if (total <= 0.0) {
    throw degenerate_input("nlj_glr: all eigenvalues are zero");
  }
  double log_top_sum = 0.0;
  for (int i = 0; i < m; ++i) {
    if (in.gram_eigenvalues[i] <= 0.0) {
      throw degenerate_input("nlj_glr: zero eigenvalue inside the fitted leading block");
    }
    log_top_sum += std::log(in.gram_eigenvalues[i] / in.sample_count);
  }
  double tail_sum = 0.0;
  for (int i = m; i < n; ++i) {
    tail_sum += in.gram_eigenvalues[i];
  }
  return glr_from_sums(in, m, total, log_top_sum, tail_sum);
}

std::vector<double> nlj_glr_all(const NljStatisticInput& in) {
  in.validate();
  const int n = in.n_channels();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    total += in.gram_eigenvalues[i];
  }
  if (total <= 0.0) {
    throw degenerate_input("nlj_glr: all eigenvalues are zero");
  }
  std::vector<double> out(in.max_order);
  double log_top_sum = 0.0;
  double tail_sum = total;
  for (int m = 1; m <= in.max_order; ++m) {
    const double top = in.gram_eigenvalues[m - 1];
    if (top <= 0.0) {
      throw degenerate_input("nlj_glr: zero eigenvalue inside the fitted leading block");
    }
    log_top_sum += std::log(top / in.sample_count);
    tail_sum -= top;
    out[m - 1] = glr_from_sums(in, m, total, log_top_sum, tail_sum);
  }
  return out;
}

int nlj_param_count(int m, int n) {
  if (m < 1 || m > n) {
    throw invalid_input("nlj_param_count: order out of range");
  }
  return m * (2 * n - m) + 1;
}

std::vector<HypothesisScore> nlj_scores(const DataMatrix& z, const PenaltyRule& rule,
                                        int max_order) {
  const int n = static_cast<int>(z.rows());
  const int k = static_cast<int>(z.cols());
  const cmat gram = z * z.adjoint();
  const rvec ev = psd_eigenvalues(gram);

  NljStatisticInput in;
  in.gram_eigenvalues.assign(ev.data(), ev.data() + ev.size());
  in.sample_count = k;
  in.max_order = max_order;

  const std::vector<double> lambdas = nlj_glr_all(in);
  const double t_or_k =
      rule.kind == PenaltyKind::BicK ? static_cast<double>(k) : 2.0 * k * n;
  std::vector<HypothesisScore> scores(max_order);
  for (int m = 1; m <= max_order; ++m) {
    const int p = nlj_param_count(m, n);
    scores[m - 1] = {m, lambdas[m - 1], p, penalty(rule, p, t_or_k)};
  }
  return scores;
}

}  // namespace klic
