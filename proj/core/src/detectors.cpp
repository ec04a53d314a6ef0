#include "klic/detectors.hpp"

#include <memory>

namespace klic {

ScoreSampler make_nlj_scorer(const NljScenario& s, double sigma_n2, const PenaltyRule& rule,
                             int truth) {
  auto sampler = std::make_shared<const NljSampler>(s, sigma_n2);
  const int max_order = s.max_order;
  return [sampler, rule, truth, max_order](SeededRng& rng) {
    return nlj_scores(sampler->sample(truth, rng), rule, max_order);
  };
}

ScoreSampler make_cj_scorer(const CjScenario& s, const PenaltyRule& rule, int truth) {
  auto sampler = std::make_shared<const CjSampler>(s);
  return [sampler, rule, truth](SeededRng& rng) {
    const CjSample data = sampler->sample(truth, rng);
    return cj_scores(data.z, data.training, sampler->target_steering(),
                     sampler->jammer_basis(), rule);
  };
}

ScoreSampler make_rst_scorer(const RstScenario& s, const PenaltyRule& rule, int truth) {
  auto sampler = std::make_shared<const RstSampler>(s);
  return [sampler, rule, truth](SeededRng& rng) {
    const RstSample data = sampler->sample(truth, rng);
    RstStatisticInput in;
    in.window = data.window;
    in.training = data.training;
    in.v = sampler->target_steering();
    return rst_scores(in, rule);
  };
}

EstimateMap rst_estimate_map(int window_length) {
  auto windows = std::make_shared<const std::vector<WindowHypothesis>>(
      enumerate_windows(window_length));
  return [windows](int m_hat) -> std::pair<double, double> {
    if (m_hat < 1 || m_hat > static_cast<int>(windows->size())) {
      throw invalid_input("rst_estimate_map: selection index out of range");
    }
    const WindowHypothesis& w = (*windows)[m_hat - 1];
    return {static_cast<double>(w.size), static_cast<double>(w.start)};
  };
}

}  // namespace klic
