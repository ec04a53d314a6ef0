#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <klic/errors.hpp>

#include "experiment.hpp"

namespace {

using klic::cli::ExperimentConfig;

struct CommonArgs {
  std::optional<std::filesystem::path> config_file;
  std::vector<std::pair<std::string, std::string>> overrides;
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_file, "flat key=value config file");

  const auto add_kv = [cmd, &args](const std::string& flag, const std::string& key,
                                   const std::string& desc) {
    cmd->add_option_function<std::string>(
        flag, [&args, key](const std::string& value) { args.overrides.emplace_back(key, value); },
        desc);
  };
  add_kv("--scenario", "scenario", "nlj | cj | rst");
  add_kv("--rule", "rule", "half_p | full_p | gic | bic_t | bic_k");
  add_kv("--rho", "rho", "GIC tuning parameter (> 1)");
  add_kv("--pfa", "pfa", "target false-alarm probability");
  add_kv("--trials-calib", "trials_calib", "calibration trials (0 -> 100/pfa)");
  add_kv("--trials-pd", "trials_pd", "Monte Carlo trials per sweep point");
  add_kv("--seed", "seed", "base seed for all stages");
  add_kv("--threads", "threads", "worker threads (0 -> hardware, capped by KLIC_THREADS)");
  add_kv("--outdir", "outdir", "output directory");
  add_kv("--sweep", "sweep", "axis:lo:hi:step in dB (axis jnr|jcnr|sinr)");
  add_kv("--hist-point-db", "hist_point_db", "operating point for classification histograms");
  add_kv("--n", "n", "channel count N");
  add_kv("--k", "k", "training/sample snapshot count K");
  add_kv("--sigma-n2", "sigma_n2", "thermal noise power (linear)");
  add_kv("--nlj-angles", "nlj_angles_deg", "jammer angles in degrees, comma separated");
  add_kv("--nlj-max-order", "nlj_max_order", "maximum candidate jammer count N_J");
  add_kv("--cnr-db", "cnr_db", "clutter-to-noise ratio in dB (cj/rst)");
  add_kv("--rho-c", "rho_c", "clutter one-lag correlation coefficient");
  add_kv("--noise-placement", "noise_placement", "diagonal | all (ICM noise placement)");
  add_kv("--cj-target-angle", "cj_target_angle_deg", "target angle in degrees");
  add_kv("--cj-jammer-angles", "cj_jammer_angles_deg", "jammer subspace angles in degrees");
  add_kv("--snr-db", "snr_db", "target SNR in dB (cj)");
  add_kv("--cj-truth", "cj_truth", "true hypothesis for cj runs (0..3)");
  add_kv("--l", "l", "window length L (rst)");
  add_kv("--rst-bins", "rst_bins", "occupied bins start:size (rst)");

  cmd->add_flag_function(
      "--two-stage",
      [&args](std::int64_t) { args.overrides.emplace_back("two_stage", "true"); },
      "use the two-stage competitor instead of the one-stage rule");
  cmd->add_flag_function(
      "--no-svg", [&args](std::int64_t) { args.overrides.emplace_back("emit_svg", "false"); },
      "skip SVG curve output");
}

ExperimentConfig build_config(const CommonArgs& args) {
  return klic::cli::load_config(args.config_file, args.overrides);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"penalized-GLR multiple-hypothesis radar detection experiments"};
  app.require_subcommand(1);

  CommonArgs calibrate_args;
  CLI::App* calibrate = app.add_subcommand("calibrate", "Monte Carlo threshold calibration");
  add_common_options(calibrate, calibrate_args);

  CommonArgs run_args;
  CLI::App* run = app.add_subcommand("run", "calibrate + sweep + histogram pipeline");
  add_common_options(run, run_args);

  CommonArgs sweep_args;
  std::optional<double> sweep_eta;
  std::optional<std::filesystem::path> sweep_calibration;
  CLI::App* sweep = app.add_subcommand("sweep", "detection sweep at a fixed threshold");
  add_common_options(sweep, sweep_args);
  sweep->add_option("--eta", sweep_eta, "detection threshold");
  sweep->add_option("--calibration", sweep_calibration, "calibration JSON with the threshold");

  CommonArgs replay_args;
  std::string replay_stage = "calib";
  std::size_t replay_point = 0;
  std::uint64_t replay_trial_index = 0;
  std::optional<double> replay_eta;
  CLI::App* replay = app.add_subcommand("replay", "dump per-hypothesis scores for one trial");
  add_common_options(replay, replay_args);
  replay->add_option("--stage", replay_stage, "calib | pd | hist");
  replay->add_option("--point", replay_point, "sweep point / histogram row index");
  replay->add_option("--trial", replay_trial_index, "trial index within the stage")->required();
  replay->add_option("--eta", replay_eta, "apply the decision rule at this threshold");

  CLI11_PARSE(app, argc, argv);

  try {
    if (calibrate->parsed()) {
      return klic::cli::run_calibrate(build_config(calibrate_args));
    }
    if (run->parsed()) {
      return klic::cli::run_experiment(build_config(run_args));
    }
    if (sweep->parsed()) {
      return klic::cli::run_sweep(build_config(sweep_args), sweep_eta, sweep_calibration);
    }
    if (replay->parsed()) {
      return klic::cli::replay_trial(build_config(replay_args), replay_stage, replay_point,
                                     replay_trial_index, replay_eta);
    }
  } catch (const klic::trial_error& e) {
    std::cerr << "error: " << e.what() << "\n"
              << "replay with: klic replay --trial " << e.trial() << " ... (stage seed "
              << e.base_seed() << ")\n";
    return 3;
  } catch (const klic::invalid_config& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const klic::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
