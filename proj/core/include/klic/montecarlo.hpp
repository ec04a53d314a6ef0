#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "klic/decision.hpp"
#include "klic/rng.hpp"

namespace klic {

struct CalibrationSpec {
  double pfa = 1e-2;          // target false-alarm probability in (0, 1)
  std::uint64_t trials = 0;   // 0 -> default 100 / pfa
  std::uint64_t seed = 0;

  std::uint64_t effective_trials() const;
  // Throws insufficient_trials when trials * pfa < 1; prints a one-line
  // warning to stderr below the recommended 100 / pfa.
  void validate() const;
};

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
  bool contains(double p) const noexcept { return lo <= p && p <= hi; }
};

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                               double z = 1.959963984540054);

// Worker resolution: `requested` if nonzero, else hardware concurrency, both
// capped by the KLIC_THREADS environment variable when set.
unsigned worker_count(unsigned requested = 0);

// Runs fn(t) for t in [0, trials) across workers. Each trial must derive all
// randomness from its own index, so any schedule produces identical results.
// A failure inside fn is rethrown as trial_error for the smallest failing
// trial index; `context_seed` is the stage seed echoed for replay.
void run_trials(std::uint64_t trials, unsigned workers,
                const std::function<void(std::uint64_t)>& fn, std::uint64_t context_seed = 0);

// Draws one data set and returns the per-hypothesis scores for it.
using ScoreSampler = std::function<std::vector<HypothesisScore>(SeededRng&)>;

// Per-trial stream for sweep-style stages: point index first, trial second.
std::uint64_t point_seed(std::uint64_t stage_seed, std::size_t point_index);

// Empirical (1 - pfa)-quantile of the decision score under H0; the order
// statistic at index ceil((1 - pfa) * trials) of the sorted scores.
double calibrate_threshold(const ScoreSampler& h0_scores, DecisionKind kind,
                           const CalibrationSpec& spec, unsigned workers = 0);

struct PdPoint {
  double sweep_value = 0.0;
  double pd = 0.0;
  double std_err = 0.0;  // binomial standard error
  std::uint64_t trials = 0;
};
using PdCurve = std::vector<PdPoint>;

struct RmsePoint {
  double sweep_value = 0.0;
  double rmse_size = 0.0;      // over detected trials
  double rmse_position = 0.0;  // over detected trials
  std::uint64_t detected = 0;
  std::uint64_t trials = 0;
};

// Maps a selected hypothesis index >= 1 to (size, position) estimates.
using EstimateMap = std::function<std::pair<double, double>(int m_hat)>;

struct SweepStats {
  PdCurve pd;
  std::vector<RmsePoint> rmse;  // empty unless an EstimateMap was supplied
};

// One pass over the sweep grid: P(detected and m_hat == truth_m) per point,
// plus size/position RMSE when `estimate` is given. Point i uses base seed
// point_seed(seed, i); trial t within a point uses stream t.
SweepStats sweep_detection(const std::function<ScoreSampler(double)>& scorer_at,
                           DecisionKind kind, double eta, std::span<const double> sweep,
                           int truth_m, const EstimateMap* estimate,
                           std::pair<double, double> truth_size_position, std::uint64_t trials,
                           std::uint64_t seed, unsigned workers = 0);

PdCurve estimate_pd(const std::function<ScoreSampler(double)>& scorer_at, DecisionKind kind,
                    double eta, std::span<const double> sweep, int truth_m, std::uint64_t trials,
                    std::uint64_t seed, unsigned workers = 0);

struct ClassificationHistogram {
  std::vector<int> truths;                // row labels n
  int max_m = 0;                          // columns 0..max_m (0 = not detected)
  std::vector<std::vector<double>> prob;  // prob[i][m] = P(select m | truth_i)
  std::uint64_t trials = 0;

  double probability(int truth, int m) const;
  // P(m_hat > order | truth, detected)
  double overestimation_given_detected(int truth, int order) const;
};

ClassificationHistogram classification_histogram(
    const std::function<ScoreSampler(int)>& scorer_for_truth, DecisionKind kind, double eta,
    std::span<const int> truths, int max_m, std::uint64_t trials, std::uint64_t seed,
    unsigned workers = 0);

struct CfarEntry {
  std::string label;
  double pfa_hat = 0.0;
  WilsonInterval ci;
  std::uint64_t trials = 0;
  bool pass = false;  // target inside the interval
};

struct CfarReport {
  double pfa_target = 0.0;
  std::vector<CfarEntry> entries;
  bool all_pass() const;
};

// Measures the false-alarm rate of a fixed threshold under each nuisance
// covariance. All covariances consume identical trial streams (common random
// numbers), so an exactly invariant statistic yields identical counts.
CfarReport cfar_check(const std::function<ScoreSampler(std::size_t)>& scorer_for_cov,
                      std::span<const std::string> labels, DecisionKind kind, double eta,
                      double pfa_target, std::uint64_t trials, std::uint64_t seed,
                      unsigned workers = 0);

// Aggregate of one experiment run, serialized by report_io.
struct MonteCarloReport {
  double threshold = 0.0;
  double pfa = 0.0;
  std::uint64_t calibration_trials = 0;
  std::uint64_t seed = 0;
  int truth_m = 0;
  std::string sweep_axis;  // "jnr" | "jcnr" | "sinr", dB scale
  PdCurve pd;
  std::vector<RmsePoint> rmse;
  std::optional<ClassificationHistogram> histogram;
  std::vector<std::pair<std::string, std::string>> config_echo;  // ordered key=value
};

}  // namespace klic
