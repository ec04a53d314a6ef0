#include "klic/decision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace klic {

std::string_view penalty_name(PenaltyKind kind) {
  switch (kind) {
    case PenaltyKind::HalfP:
      return "half_p";
    case PenaltyKind::FullP:
      return "full_p";
    case PenaltyKind::Gic:
      return "gic";
    case PenaltyKind::BicT:
      return "bic_t";
    case PenaltyKind::BicK:
      return "bic_k";
  }
  return "unknown";
}

PenaltyRule parse_penalty_rule(std::string_view name, double rho) {
  if (name == "half_p") return PenaltyRule::half_p();
  if (name == "full_p") return PenaltyRule::full_p();
  if (name == "gic") return PenaltyRule::gic(rho);
  if (name == "bic_t") return PenaltyRule::bic_t();
  if (name == "bic_k") return PenaltyRule::bic_k();
  throw invalid_config("unknown penalty rule: " + std::string(name));
}

double penalty(const PenaltyRule& rule, int p, double t_or_k) {
  if (p < 1) {
    throw invalid_input("penalty: parameter count must be positive");
  }
  switch (rule.kind) {
    case PenaltyKind::HalfP:
      return p / 2.0;
    case PenaltyKind::FullP:
      return static_cast<double>(p);
    case PenaltyKind::Gic:
      if (!(rule.rho > 1.0)) {
        throw invalid_config("penalty: gic requires rho > 1");
      }
      return (1.0 + rule.rho) / 2.0 * p;
    case PenaltyKind::BicT:
    case PenaltyKind::BicK:
      if (!(t_or_k >= 2.0)) {
        throw invalid_input("penalty: sample-size argument must be at least 2");
      }
      return p / 2.0 * std::log(t_or_k);
  }
  throw invalid_config("penalty: unknown rule");
}

namespace {

// Index of max(lambda - h), smallest index on exact ties.
std::size_t penalized_argmax(std::span<const HypothesisScore> scores) {
  std::size_t best = 0;
  double best_value = scores[0].lambda - scores[0].penalty;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    const double value = scores[i].lambda - scores[i].penalty;
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }
  return best;
}

}  // namespace

Decision one_stage_decide(std::span<const HypothesisScore> scores, double eta) {
  if (scores.empty()) {
    throw invalid_input("one_stage_decide: empty score list");
  }
  const std::size_t best = penalized_argmax(scores);
  Decision d;
  d.score = scores[best].lambda - scores[best].penalty;
  d.detected = d.score > eta;
  d.m_hat = d.detected ? scores[best].m : 0;
  return d;
}

Decision two_stage_decide(std::span<const HypothesisScore> scores, double eta) {
  if (scores.empty()) {
    throw invalid_input("two_stage_decide: empty score list");
  }
  // The first-stage selector shares the penalized argmax (a common factor of
  // two on both terms cancels); the second stage thresholds the plain GLR at
  // the selected order.
  const std::size_t best = penalized_argmax(scores);
  Decision d;
  d.score = scores[best].lambda;
  d.detected = d.score > eta;
  d.m_hat = d.detected ? scores[best].m : 0;
  return d;
}

Decision decide(std::span<const HypothesisScore> scores, DecisionKind kind, double eta) {
  return kind == DecisionKind::OneStage ? one_stage_decide(scores, eta)
                                        : two_stage_decide(scores, eta);
}

double decision_score(std::span<const HypothesisScore> scores, DecisionKind kind) {
  if (scores.empty()) {
    throw invalid_input("decision_score: empty score list");
  }
  const std::size_t best = penalized_argmax(scores);
  return kind == DecisionKind::OneStage ? scores[best].lambda - scores[best].penalty
                                        : scores[best].lambda;
}

ModelPrior ModelPrior::exponential(std::vector<int> domain, std::function<double(int)> g) {
  if (domain.empty()) {
    throw invalid_input("ModelPrior: empty domain");
  }
  ModelPrior prior;
  prior.domain = std::move(domain);
  prior.g = std::move(g);
  double a = 0.0;
  for (int p_r : prior.domain) {
    a += std::exp(-prior.g(p_r));
  }
  prior.a = a;
  prior.log_a = std::log(a);
  return prior;
}

Decision map_ml_decide(std::span<const std::pair<int, double>> loglik_by_pr, double loglik_h0,
                       const ModelPrior& prior, double eta) {
  if (loglik_by_pr.empty()) {
    throw invalid_input("map_ml_decide: empty log-likelihood list");
  }
  std::size_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < loglik_by_pr.size(); ++i) {
    const auto& [p_r, loglik] = loglik_by_pr[i];
    const double value = loglik + prior.log_pi(p_r);
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }
  Decision d;
  d.score = best_value - loglik_h0;
  d.detected = d.score > eta;
  d.m_hat = d.detected ? static_cast<int>(best) + 1 : 0;
  return d;
}

}  // namespace klic
