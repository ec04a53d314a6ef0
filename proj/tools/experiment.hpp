#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <klic/detectors.hpp>

namespace klic::cli {

struct ExperimentConfig {
  std::string scenario = "nlj";
  std::string rule = "gic";
  double rho = 2.0;
  bool two_stage = false;
  double pfa = 1e-2;
  std::uint64_t trials_calib = 0;  // 0 -> 100 / pfa
  std::uint64_t trials_pd = 10000;
  std::uint64_t seed = 20260809;
  unsigned threads = 0;
  std::string outdir = "out";
  bool emit_svg = true;

  int n = 16;
  int k = 32;
  double sigma_n2 = 1.0;

  std::string sweep;                 // axis:lo:hi:step in dB, default per scenario
  std::optional<double> hist_point_db;  // histogram operating point, default per scenario

  std::vector<double> nlj_angles_deg = {10.0, 20.0, -15.0};
  int nlj_max_order = 6;

  double cnr_db = 20.0;
  double rho_c = 0.95;
  std::string noise_placement = "diagonal";  // "diagonal" | "all"

  double cj_target_angle_deg = 0.0;
  std::vector<double> cj_jammer_angles_deg = {35.0, 40.0, 45.0};
  double snr_db = 20.0;
  int cj_truth = 3;

  int l = 10;
  int rst_bins_start = 4;
  int rst_bins_size = 2;
};

// Applies one key=value setting; throws invalid_config naming the key.
void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value);

// Flat key=value file ('#' comments), then overrides in order.
ExperimentConfig load_config(const std::optional<std::filesystem::path>& file,
                             const std::vector<std::pair<std::string, std::string>>& overrides);

void validate(const ExperimentConfig& cfg);

// Ordered echo of every effective setting, embedded in all output headers.
std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig& cfg);

struct SweepGrid {
  std::string axis;
  std::string text;  // effective axis:lo:hi:step string
  std::vector<double> values_db;
};
SweepGrid parse_sweep(const ExperimentConfig& cfg);

// The configured scenario bound to its statistics: everything run/calibrate/
// sweep/replay need.
struct ScenarioRuntime {
  std::string sweep_axis;
  std::vector<double> sweep_db;
  int truth_m = 0;
  int max_m = 0;
  double hist_point_db = 0.0;
  std::vector<int> hist_truths;
  ScoreSampler h0;
  std::function<ScoreSampler(double db)> scorer_at_db;
  std::function<ScoreSampler(int truth)> hist_scorer;
  EstimateMap estimate;                      // null unless rst
  std::pair<double, double> truth_size_pos;  // rst: (size, start)
};

ScenarioRuntime make_runtime(const ExperimentConfig& cfg);

// Stage seeds shared by the batch pipeline and replay.
std::uint64_t calibration_seed(const ExperimentConfig& cfg);
std::uint64_t pd_stage_seed(const ExperimentConfig& cfg);
std::uint64_t hist_stage_seed(const ExperimentConfig& cfg);

int run_calibrate(const ExperimentConfig& cfg);
int run_experiment(const ExperimentConfig& cfg);
int run_sweep(const ExperimentConfig& cfg, std::optional<double> eta,
              const std::optional<std::filesystem::path>& calibration_json);
int replay_trial(const ExperimentConfig& cfg, const std::string& stage, std::size_t point,
                 std::uint64_t trial, std::optional<double> eta);

}  // namespace klic::cli
