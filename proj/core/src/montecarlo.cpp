#include "klic/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <thread>

namespace klic {

std::uint64_t CalibrationSpec::effective_trials() const {
  if (trials != 0) {
    return trials;
  }
  return static_cast<std::uint64_t>(std::ceil(100.0 / pfa));
}

void CalibrationSpec::validate() const {
  if (!(pfa > 0.0 && pfa < 1.0)) {
    throw invalid_config("calibration: pfa must lie in (0, 1)");
  }
  const double n = static_cast<double>(effective_trials());
  if (n * pfa < 1.0) {
    throw insufficient_trials("calibration: trials * pfa < 1, threshold undefined");
  }
  if (n * pfa < 100.0) {
    std::cerr << "[klic] warning: calibration uses " << effective_trials()
              << " trials for pfa=" << pfa << " (fewer than 100/pfa); threshold will be noisy\n";
  }
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) {
    return {0.0, 1.0};
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

unsigned worker_count(unsigned requested) {
  unsigned workers = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("KLIC_THREADS")) {
    const long parsed = std::strtol(cap, nullptr, 10);
    if (parsed > 0) {
      workers = std::min<unsigned>(workers, static_cast<unsigned>(parsed));
    }
  }
  return std::max(1u, workers);
}

void run_trials(std::uint64_t trials, unsigned workers,
                const std::function<void(std::uint64_t)>& fn, std::uint64_t context_seed) {
  if (trials == 0) {
    return;
  }
  workers = std::min<std::uint64_t>(worker_count(workers), trials);

  std::mutex error_mutex;
  bool failed = false;
  std::uint64_t failed_trial = 0;
  std::string failed_what;

  auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t t = begin; t < end; ++t) {
      try {
        fn(t);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed || t < failed_trial) {
          failed = true;
          failed_trial = t;
          failed_what = e.what();
        }
        return;
      }
    }
  };

  if (workers == 1) {
    run_range(0, trials);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = (trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = w * chunk;
      const std::uint64_t end = std::min(trials, begin + chunk);
      if (begin >= end) {
        break;
      }
      pool.emplace_back(run_range, begin, end);
    }
    for (auto& th : pool) {
      th.join();
    }
  }
  if (failed) {
    throw trial_error(failed_trial, context_seed, failed_what);
  }
}

std::uint64_t point_seed(std::uint64_t stage_seed, std::size_t point_index) {
  return derive_seed(stage_seed, point_index + 1);
}

double calibrate_threshold(const ScoreSampler& h0_scores, DecisionKind kind,
                           const CalibrationSpec& spec, unsigned workers) {
  spec.validate();
  const std::uint64_t n = spec.effective_trials();
  std::vector<double> samples(n);
  run_trials(
      n, workers,
      [&](std::uint64_t t) {
        SeededRng rng(spec.seed, t);
        samples[t] = decision_score(h0_scores(rng), kind);
      },
      spec.seed);
  std::sort(samples.begin(), samples.end());
  const auto index = static_cast<std::uint64_t>(std::ceil((1.0 - spec.pfa) * n));
  return samples[index - 1];
}

SweepStats sweep_detection(const std::function<ScoreSampler(double)>& scorer_at,
                           DecisionKind kind, double eta, std::span<const double> sweep,
                           int truth_m, const EstimateMap* estimate,
                           std::pair<double, double> truth_size_position, std::uint64_t trials,
                           std::uint64_t seed, unsigned workers) {
  if (trials == 0) {
    throw invalid_input("sweep_detection: zero trials");
  }
  SweepStats out;
  out.pd.reserve(sweep.size());
  std::vector<int> selections(trials);
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    const ScoreSampler scorer = scorer_at(sweep[i]);
    const std::uint64_t seed_i = point_seed(seed, i);
    run_trials(
        trials, workers,
        [&](std::uint64_t t) {
          SeededRng rng(seed_i, t);
          selections[t] = decide(scorer(rng), kind, eta).m_hat;
        },
        seed_i);

    std::uint64_t hits = 0;
    std::uint64_t detected = 0;
    double sq_size = 0.0;
    double sq_pos = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t) {
      const int m_hat = selections[t];
      if (m_hat == 0) {
        continue;
      }
      ++detected;
      hits += (m_hat == truth_m);
      if (estimate) {
        const auto [size_hat, pos_hat] = (*estimate)(m_hat);
        sq_size += (size_hat - truth_size_position.first) * (size_hat - truth_size_position.first);
        sq_pos +=
            (pos_hat - truth_size_position.second) * (pos_hat - truth_size_position.second);
      }
    }
    const double pd = static_cast<double>(hits) / static_cast<double>(trials);
    out.pd.push_back(
        {sweep[i], pd, std::sqrt(pd * (1.0 - pd) / static_cast<double>(trials)), trials});
    if (estimate) {
      RmsePoint r;
      r.sweep_value = sweep[i];
      r.detected = detected;
      r.trials = trials;
      r.rmse_size = detected ? std::sqrt(sq_size / static_cast<double>(detected)) : 0.0;
      r.rmse_position = detected ? std::sqrt(sq_pos / static_cast<double>(detected)) : 0.0;
      out.rmse.push_back(r);
    }
  }
  return out;
}

PdCurve estimate_pd(const std::function<ScoreSampler(double)>& scorer_at, DecisionKind kind,
                    double eta, std::span<const double> sweep, int truth_m, std::uint64_t trials,
                    std::uint64_t seed, unsigned workers) {
  return sweep_detection(scorer_at, kind, eta, sweep, truth_m, nullptr, {0.0, 0.0}, trials, seed,
                         workers)
      .pd;
}

double ClassificationHistogram::probability(int truth, int m) const {
  for (std::size_t i = 0; i < truths.size(); ++i) {
    if (truths[i] == truth) {
      if (m < 0 || m > max_m) {
        throw invalid_input("histogram: selection index out of range");
      }
      return prob[i][m];
    }
  }
  throw invalid_input("histogram: unknown truth label");
}

double ClassificationHistogram::overestimation_given_detected(int truth, int order) const {
  for (std::size_t i = 0; i < truths.size(); ++i) {
    if (truths[i] == truth) {
      double above = 0.0;
      double detected = 0.0;
      for (int m = 1; m <= max_m; ++m) {
        detected += prob[i][m];
        if (m > order) {
          above += prob[i][m];
        }
      }
      return detected > 0.0 ? above / detected : 0.0;
    }
  }
  throw invalid_input("histogram: unknown truth label");
}

ClassificationHistogram classification_histogram(
    const std::function<ScoreSampler(int)>& scorer_for_truth, DecisionKind kind, double eta,
    std::span<const int> truths, int max_m, std::uint64_t trials, std::uint64_t seed,
    unsigned workers) {
  if (trials == 0) {
    throw invalid_input("classification_histogram: zero trials");
  }
  ClassificationHistogram hist;
  hist.truths.assign(truths.begin(), truths.end());
  hist.max_m = max_m;
  hist.trials = trials;
  hist.prob.assign(truths.size(), std::vector<double>(max_m + 1, 0.0));

  std::vector<int> selections(trials);
  for (std::size_t i = 0; i < truths.size(); ++i) {
    const ScoreSampler scorer = scorer_for_truth(truths[i]);
    const std::uint64_t seed_i = point_seed(seed, i);
    run_trials(
        trials, workers,
        [&](std::uint64_t t) {
          SeededRng rng(seed_i, t);
          selections[t] = decide(scorer(rng), kind, eta).m_hat;
        },
        seed_i);
    for (std::uint64_t t = 0; t < trials; ++t) {
      const int m_hat = selections[t];
      if (m_hat < 0 || m_hat > max_m) {
        throw invalid_input("classification_histogram: selection outside [0, max_m]");
      }
      hist.prob[i][m_hat] += 1.0;
    }
    for (double& p : hist.prob[i]) {
      p /= static_cast<double>(trials);
    }
  }
  return hist;
}

bool CfarReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const CfarEntry& e) { return e.pass; });
}

CfarReport cfar_check(const std::function<ScoreSampler(std::size_t)>& scorer_for_cov,
                      std::span<const std::string> labels, DecisionKind kind, double eta,
                      double pfa_target, std::uint64_t trials, std::uint64_t seed,
                      unsigned workers) {
  if (trials == 0) {
    throw invalid_input("cfar_check: zero trials");
  }
  CfarReport report;
  report.pfa_target = pfa_target;
  std::vector<unsigned char> detected(trials);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const ScoreSampler scorer = scorer_for_cov(i);
    // Every covariance re-uses the same trial streams (common random numbers).
    run_trials(
        trials, workers,
        [&](std::uint64_t t) {
          SeededRng rng(seed, t);
          detected[t] = decide(scorer(rng), kind, eta).detected ? 1 : 0;
        },
        seed);
    std::uint64_t alarms = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
      alarms += detected[t];
    }
    CfarEntry entry;
    entry.label = labels[i];
    entry.trials = trials;
    entry.pfa_hat = static_cast<double>(alarms) / static_cast<double>(trials);
    entry.ci = wilson_interval(alarms, trials);
    entry.pass = entry.ci.contains(pfa_target);
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace klic
