#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "klic/errors.hpp"

namespace klic {

enum class PenaltyKind { HalfP, FullP, Gic, BicT, BicK };

struct PenaltyRule {
  PenaltyKind kind = PenaltyKind::Gic;
  double rho = 2.0;  // GIC tuning parameter, must exceed 1

  static PenaltyRule half_p() { return {PenaltyKind::HalfP, 0.0}; }
  static PenaltyRule full_p() { return {PenaltyKind::FullP, 0.0}; }
  static PenaltyRule gic(double rho) { return {PenaltyKind::Gic, rho}; }
  static PenaltyRule bic_t() { return {PenaltyKind::BicT, 0.0}; }
  static PenaltyRule bic_k() { return {PenaltyKind::BicK, 0.0}; }
};

// Stable names used in config files and output file names.
std::string_view penalty_name(PenaltyKind kind);
PenaltyRule parse_penalty_rule(std::string_view name, double rho);

// Penalty h for a hypothesis with p total real parameters. `t_or_k` is the
// rule's sample-size argument: total real observation count T for BicT, the
// snapshot count K for BicK; ignored by the fixed-coefficient rules.
double penalty(const PenaltyRule& rule, int p, double t_or_k);

struct HypothesisScore {
  int m = 0;           // hypothesis index >= 1
  double lambda = 0;   // GLR log-statistic
  int p = 0;           // total parameter count p_{r,m} + p_s
  double penalty = 0;  // h(m)
};

struct Decision {
  bool detected = false;
  int m_hat = 0;     // selected hypothesis, 0 = H0
  double score = 0;  // statistic compared against the threshold
};

// Penalized-maximum rule: score = max_m(lambda_m - h(m)), detected iff
// score > eta (strict), argmax ties broken toward the smallest m.
Decision one_stage_decide(std::span<const HypothesisScore> scores, double eta);

// Competitor: stage 1 selects m by the same argmax, stage 2 thresholds the
// unpenalized lambda at the selected order.
Decision two_stage_decide(std::span<const HypothesisScore> scores, double eta);

enum class DecisionKind { OneStage, TwoStage };

Decision decide(std::span<const HypothesisScore> scores, DecisionKind kind, double eta);

// The statistic whose H0 quantile calibrates the threshold for either rule.
double decision_score(std::span<const HypothesisScore> scores, DecisionKind kind);

/// Exponential-family prior pi(p_r) = exp(-g(p_r)) / A over admissible
/// parameter counts. g is expected to be increasing (parsimony); a constant g
/// degenerates to the uniform prior and is allowed for testing.
struct ModelPrior {
  std::vector<int> domain;       // admissible p_r values, hypothesis order
  std::function<double(int)> g;  // penalty exponent
  double a = 0.0;                // normalization: sum exp(-g)
  double log_a = 0.0;

  static ModelPrior exponential(std::vector<int> domain, std::function<double(int)> g);

  double log_pi(int p_r) const { return -g(p_r) - log_a; }
};

// Regularized ML rule: max_{p_r}{ loglik(p_r) + log pi(p_r) } - loglik_H0 > eta.
// Entries of `loglik_by_pr` are (p_r, maximized log-likelihood) in hypothesis
// order; the returned m_hat is the 1-based position of the argmax.
Decision map_ml_decide(std::span<const std::pair<int, double>> loglik_by_pr, double loglik_h0,
                       const ModelPrior& prior, double eta);

}  // namespace klic
