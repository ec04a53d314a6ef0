#include "experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include <klic/report_io.hpp>

#include "svg_plot.hpp"

namespace klic::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kPi = std::numbers::pi;

constexpr std::uint64_t kSaltCalibration = 0x11;
constexpr std::uint64_t kSaltPdSweep = 0x22;
constexpr std::uint64_t kSaltHistogram = 0x33;

double db_to_linear(double db) {
  return std::pow(10.0, db / 10.0);
}

double deg_to_rad(double deg) {
  return deg * kPi / 180.0;
}

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
  throw invalid_config(key + ": " + why);
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) {
      bad_key(key, "trailing characters in '" + value + "'");
    }
    return v;
  } catch (const invalid_config&) {
    throw;
  } catch (const std::exception&) {
    bad_key(key, "expected a number, got '" + value + "'");
  }
}

std::int64_t to_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) {
      bad_key(key, "trailing characters in '" + value + "'");
    }
    return v;
  } catch (const invalid_config&) {
    throw;
  } catch (const std::exception&) {
    bad_key(key, "expected an integer, got '" + value + "'");
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad_key(key, "expected a boolean, got '" + value + "'");
}

std::vector<double> to_double_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(to_double(key, item));
  }
  if (out.empty()) {
    bad_key(key, "expected a comma-separated list");
  }
  return out;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_g12(values[i]);
  }
  return out;
}

std::string rule_label(const ExperimentConfig& cfg) {
  std::string label{penalty_name(parse_penalty_rule(cfg.rule, cfg.rho).kind)};
  if (cfg.two_stage) {
    label += "_ts";
  }
  return label;
}

PenaltyRule make_rule(const ExperimentConfig& cfg) {
  return parse_penalty_rule(cfg.rule, cfg.rho);
}

DecisionKind decision_kind(const ExperimentConfig& cfg) {
  return cfg.two_stage ? DecisionKind::TwoStage : DecisionKind::OneStage;
}

ClutterModel make_clutter(const ExperimentConfig& cfg) {
  ClutterModel c;
  c.sigma_n2 = cfg.sigma_n2;
  c.sigma_c2 = db_to_linear(cfg.cnr_db) * cfg.sigma_n2;
  c.rho_c = cfg.rho_c;
  c.noise_placement = cfg.noise_placement == "all" ? NoisePlacement::AllEntries
                                                   : NoisePlacement::DiagonalOnly;
  return c;
}

void write_calibration_json(const fs::path& path, const ExperimentConfig& cfg, double eta,
                            const CalibrationSpec& spec) {
  json j;
  j["threshold"] = eta;
  j["pfa"] = spec.pfa;
  j["trials"] = spec.effective_trials();
  j["seed"] = spec.seed;
  json config = json::object();
  for (const auto& [key, value] : config_echo(cfg)) {
    config[key] = value;
  }
  j["config"] = config;
  std::ofstream out(path);
  if (!out) {
    throw invalid_input("cannot open " + path.string() + " for writing");
  }
  out << j.dump(2) << "\n";
}

void emit_pd_outputs(const ExperimentConfig& cfg, const ScenarioRuntime& rt,
                     const MonteCarloReport& report, const fs::path& base) {
  write_pd_csv(fs::path(base.string() + "_pd.csv"), report);
  if (cfg.emit_svg) {
    plot::Series series;
    series.label = rule_label(cfg);
    for (const PdPoint& p : report.pd) {
      series.x.push_back(p.sweep_value);
      series.y.push_back(p.pd);
    }
    plot::Axes axes;
    axes.title = cfg.scenario + ": probability of correct detection";
    axes.x_label = rt.sweep_axis + " [dB]";
    axes.y_label = "Pd|" + std::to_string(rt.truth_m);
    axes.y_min = 0.0;
    axes.y_max = 1.0;
    write_svg_curve(fs::path(base.string() + "_pd.svg"), axes, {&series, 1});
  }
  if (!report.rmse.empty()) {
    write_rmse_csv(fs::path(base.string() + "_rmse.csv"), report);
    if (cfg.emit_svg) {
      plot::Series size_series;
      size_series.label = "size";
      plot::Series pos_series;
      pos_series.label = "position";
      for (const RmsePoint& p : report.rmse) {
        size_series.x.push_back(p.sweep_value);
        size_series.y.push_back(p.rmse_size);
        pos_series.x.push_back(p.sweep_value);
        pos_series.y.push_back(p.rmse_position);
      }
      plot::Axes axes;
      axes.title = cfg.scenario + ": RMSE of window estimates";
      axes.x_label = rt.sweep_axis + " [dB]";
      axes.y_label = "RMSE [bins]";
      axes.y_min = 0.0;
      const plot::Series both[] = {size_series, pos_series};
      write_svg_curve(fs::path(base.string() + "_rmse.svg"), axes, both);
    }
  }
}

void write_hist_json(const fs::path& path, const ExperimentConfig& cfg,
                     const ClassificationHistogram& hist, double point_db) {
  json rows = json::array();
  for (std::size_t i = 0; i < hist.truths.size(); ++i) {
    rows.push_back({{"truth", hist.truths[i]}, {"prob_by_m", hist.prob[i]}});
  }
  json j;
  j["operating_point_db"] = point_db;
  j["max_m"] = hist.max_m;
  j["trials"] = hist.trials;
  j["rows"] = rows;
  json config = json::object();
  for (const auto& [key, value] : config_echo(cfg)) {
    config[key] = value;
  }
  j["config"] = config;
  std::ofstream out(path);
  if (!out) {
    throw invalid_input("cannot open " + path.string() + " for writing");
  }
  out << j.dump(2) << "\n";
}

void print_summary(const ExperimentConfig& cfg, const ScenarioRuntime& rt, double eta,
                   const MonteCarloReport& report) {
  std::cout << "scenario " << cfg.scenario << "  rule " << rule_label(cfg);
  if (cfg.rule == "gic") {
    std::cout << " (rho=" << cfg.rho << ")";
  }
  std::cout << "  " << (cfg.two_stage ? "two-stage" : "one-stage") << "\n";
  std::cout << "threshold " << format_g12(eta) << "  (pfa " << cfg.pfa << ", "
            << report.calibration_trials << " trials)\n";
  std::cout << std::left << std::setw(14) << (rt.sweep_axis + " [dB]") << std::setw(12) << "pd"
            << std::setw(12) << "std_err" << "trials\n";
  for (const PdPoint& p : report.pd) {
    std::cout << std::left << std::setw(14) << p.sweep_value << std::setw(12) << p.pd
              << std::setw(12) << p.std_err << p.trials << "\n";
  }
  for (const RmsePoint& p : report.rmse) {
    std::cout << "rmse @ " << p.sweep_value << " dB: size " << p.rmse_size << ", position "
              << p.rmse_position << " (" << p.detected << "/" << p.trials << " detected)\n";
  }
}

}  // namespace

void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "scenario") {
    if (value != "nlj" && value != "cj" && value != "rst") {
      bad_key(key, "must be one of nlj|cj|rst");
    }
    cfg.scenario = value;
  } else if (key == "rule") {
    parse_penalty_rule(value, 2.0);  // validates the name
    cfg.rule = value;
  } else if (key == "rho") {
    cfg.rho = to_double(key, value);
  } else if (key == "two_stage") {
    cfg.two_stage = to_bool(key, value);
  } else if (key == "pfa") {
    cfg.pfa = to_double(key, value);
  } else if (key == "trials_calib") {
    cfg.trials_calib = static_cast<std::uint64_t>(to_int(key, value));
  } else if (key == "trials_pd") {
    cfg.trials_pd = static_cast<std::uint64_t>(to_int(key, value));
  } else if (key == "seed") {
    cfg.seed = static_cast<std::uint64_t>(to_int(key, value));
  } else if (key == "threads") {
    cfg.threads = static_cast<unsigned>(to_int(key, value));
  } else if (key == "outdir") {
    cfg.outdir = value;
  } else if (key == "emit_svg") {
    cfg.emit_svg = to_bool(key, value);
  } else if (key == "n") {
    cfg.n = static_cast<int>(to_int(key, value));
  } else if (key == "k") {
    cfg.k = static_cast<int>(to_int(key, value));
  } else if (key == "sigma_n2") {
    cfg.sigma_n2 = to_double(key, value);
  } else if (key == "sweep") {
    cfg.sweep = value;
  } else if (key == "hist_point_db") {
    cfg.hist_point_db = to_double(key, value);
  } else if (key == "nlj_angles_deg") {
    cfg.nlj_angles_deg = to_double_list(key, value);
  } else if (key == "nlj_max_order") {
    cfg.nlj_max_order = static_cast<int>(to_int(key, value));
  } else if (key == "cnr_db") {
    cfg.cnr_db = to_double(key, value);
  } else if (key == "rho_c") {
    cfg.rho_c = to_double(key, value);
  } else if (key == "noise_placement") {
    if (value != "diagonal" && value != "all") {
      bad_key(key, "must be diagonal|all");
    }
    cfg.noise_placement = value;
  } else if (key == "cj_target_angle_deg") {
    cfg.cj_target_angle_deg = to_double(key, value);
  } else if (key == "cj_jammer_angles_deg") {
    cfg.cj_jammer_angles_deg = to_double_list(key, value);
  } else if (key == "snr_db") {
    cfg.snr_db = to_double(key, value);
  } else if (key == "cj_truth") {
    cfg.cj_truth = static_cast<int>(to_int(key, value));
  } else if (key == "l") {
    cfg.l = static_cast<int>(to_int(key, value));
  } else if (key == "rst_bins") {
    const std::size_t colon = value.find(':');
    if (colon == std::string::npos) {
      bad_key(key, "expected start:size");
    }
    cfg.rst_bins_start = static_cast<int>(to_int(key, value.substr(0, colon)));
    cfg.rst_bins_size = static_cast<int>(to_int(key, value.substr(colon + 1)));
  } else {
    bad_key(key, "unknown configuration key");
  }
}

ExperimentConfig load_config(const std::optional<fs::path>& file,
                             const std::vector<std::pair<std::string, std::string>>& overrides) {
  ExperimentConfig cfg;
  if (file) {
    std::ifstream in(*file);
    if (!in) {
      throw invalid_config("config: cannot open " + file->string());
    }
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const std::size_t hash = line.find('#');
      if (hash != std::string::npos) {
        line.erase(hash);
      }
      const auto is_space = [](unsigned char c) { return std::isspace(c); };
      line.erase(line.begin(), std::find_if_not(line.begin(), line.end(), is_space));
      while (!line.empty() && is_space(line.back())) {
        line.pop_back();
      }
      if (line.empty()) {
        continue;
      }
      const std::size_t eq = line.find('=');
      if (eq == std::string::npos) {
        throw invalid_config("config line " + std::to_string(line_no) + ": expected key=value");
      }
      std::string key = line.substr(0, eq);
      std::string value = line.substr(eq + 1);
      while (!key.empty() && is_space(key.back())) key.pop_back();
      value.erase(value.begin(), std::find_if_not(value.begin(), value.end(), is_space));
      apply_key(cfg, key, value);
    }
  }
  for (const auto& [key, value] : overrides) {
    apply_key(cfg, key, value);
  }
  return cfg;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.rule == "gic" && !(cfg.rho > 1.0)) {
    throw invalid_config("rho: gic requires rho > 1");
  }
  if (!(cfg.pfa > 0.0 && cfg.pfa < 1.0)) {
    throw invalid_config("pfa: must lie in (0, 1)");
  }
  if (cfg.trials_pd == 0) {
    throw invalid_config("trials_pd: must be positive");
  }
  if (cfg.n < 2) {
    throw invalid_config("n: need at least two channels");
  }
  if (cfg.sigma_n2 <= 0.0) {
    throw invalid_config("sigma_n2: must be positive");
  }
  if (cfg.scenario == "nlj") {
    NljScenario s;
    s.n_channels = cfg.n;
    for (double deg : cfg.nlj_angles_deg) s.jammer_angles.push_back(deg_to_rad(deg));
    s.jnr = 1.0;
    s.max_order = cfg.nlj_max_order;
    s.sample_count = cfg.k;
    s.validate();
  } else if (cfg.scenario == "cj") {
    CjScenario s;
    s.n_channels = cfg.n;
    s.target_angle = deg_to_rad(cfg.cj_target_angle_deg);
    for (double deg : cfg.cj_jammer_angles_deg) s.jammer_angles.push_back(deg_to_rad(deg));
    s.snr = db_to_linear(cfg.snr_db);
    s.jcnr = 1.0;
    s.clutter = make_clutter(cfg);
    s.training_count = cfg.k;
    s.true_hypothesis = cfg.cj_truth;
    s.validate();
  } else if (cfg.scenario == "rst") {
    RstScenario s;
    s.n_channels = cfg.n;
    s.window_length = cfg.l;
    s.training_count = cfg.k;
    s.occupied_start = cfg.rst_bins_start;
    s.occupied_size = cfg.rst_bins_size;
    s.sinr = 1.0;
    s.clutter = make_clutter(cfg);
    s.validate();
  } else {
    throw invalid_config("scenario: must be one of nlj|cj|rst");
  }
  parse_sweep(cfg);
}

std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> echo;
  echo.emplace_back("scenario", cfg.scenario);
  echo.emplace_back("rule", cfg.rule);
  echo.emplace_back("rho", format_g12(cfg.rho));
  echo.emplace_back("two_stage", cfg.two_stage ? "true" : "false");
  echo.emplace_back("pfa", format_g12(cfg.pfa));
  echo.emplace_back("trials_calib", std::to_string(cfg.trials_calib));
  echo.emplace_back("trials_pd", std::to_string(cfg.trials_pd));
  echo.emplace_back("seed", std::to_string(cfg.seed));
  echo.emplace_back("n", std::to_string(cfg.n));
  echo.emplace_back("k", std::to_string(cfg.k));
  echo.emplace_back("sigma_n2", format_g12(cfg.sigma_n2));
  echo.emplace_back("sweep", parse_sweep(cfg).text);
  if (cfg.scenario == "nlj") {
    echo.emplace_back("nlj_angles_deg", join(cfg.nlj_angles_deg));
    echo.emplace_back("nlj_max_order", std::to_string(cfg.nlj_max_order));
  } else {
    echo.emplace_back("cnr_db", format_g12(cfg.cnr_db));
    echo.emplace_back("rho_c", format_g12(cfg.rho_c));
    echo.emplace_back("noise_placement", cfg.noise_placement);
  }
  if (cfg.scenario == "cj") {
    echo.emplace_back("cj_target_angle_deg", format_g12(cfg.cj_target_angle_deg));
    echo.emplace_back("cj_jammer_angles_deg", join(cfg.cj_jammer_angles_deg));
    echo.emplace_back("snr_db", format_g12(cfg.snr_db));
    echo.emplace_back("cj_truth", std::to_string(cfg.cj_truth));
  }
  if (cfg.scenario == "rst") {
    echo.emplace_back("l", std::to_string(cfg.l));
    echo.emplace_back("rst_bins", std::to_string(cfg.rst_bins_start) + ":" +
                                      std::to_string(cfg.rst_bins_size));
  }
  return echo;
}

SweepGrid parse_sweep(const ExperimentConfig& cfg) {
  std::string text = cfg.sweep;
  if (text.empty()) {
    if (cfg.scenario == "nlj") text = "jnr:0:20:2";
    if (cfg.scenario == "cj") text = "jcnr:0:30:3";
    if (cfg.scenario == "rst") text = "sinr:10:35:5";
  }
  std::stringstream ss(text);
  std::string axis, lo_s, hi_s, step_s;
  if (!std::getline(ss, axis, ':') || !std::getline(ss, lo_s, ':') ||
      !std::getline(ss, hi_s, ':') || !std::getline(ss, step_s)) {
    throw invalid_config("sweep: expected axis:lo:hi:step, got '" + text + "'");
  }
  const std::string expected =
      cfg.scenario == "nlj" ? "jnr" : (cfg.scenario == "cj" ? "jcnr" : "sinr");
  if (axis != expected) {
    throw invalid_config("sweep: axis '" + axis + "' does not match scenario (" + expected + ")");
  }
  const double lo = to_double("sweep", lo_s);
  const double hi = to_double("sweep", hi_s);
  const double step = to_double("sweep", step_s);
  if (!(step > 0.0) || hi < lo) {
    throw invalid_config("sweep: grid must be monotone increasing");
  }
  SweepGrid grid;
  grid.axis = axis;
  grid.text = text;
  for (double v = lo; v <= hi + 1e-9; v += step) {
    grid.values_db.push_back(v);
  }
  return grid;
}

ScenarioRuntime make_runtime(const ExperimentConfig& cfg) {
  validate(cfg);
  ScenarioRuntime rt;
  const SweepGrid grid = parse_sweep(cfg);
  rt.sweep_axis = grid.axis;
  rt.sweep_db = grid.values_db;
  const PenaltyRule rule = make_rule(cfg);

  if (cfg.scenario == "nlj") {
    NljScenario base;
    base.n_channels = cfg.n;
    for (double deg : cfg.nlj_angles_deg) base.jammer_angles.push_back(deg_to_rad(deg));
    base.max_order = cfg.nlj_max_order;
    base.sample_count = cfg.k;

    rt.truth_m = static_cast<int>(base.jammer_angles.size());
    rt.max_m = cfg.nlj_max_order;
    rt.hist_point_db = cfg.hist_point_db.value_or(10.0);
    rt.hist_truths = {1, 2, 3};
    const double sigma_n2 = cfg.sigma_n2;
    const int truth = rt.truth_m;
    rt.h0 = make_nlj_scorer(base, sigma_n2, rule, 0);
    rt.scorer_at_db = [base, sigma_n2, rule, truth](double db) {
      NljScenario s = base;
      s.jnr = db_to_linear(db);
      return make_nlj_scorer(s, sigma_n2, rule, truth);
    };
    const double hist_db = rt.hist_point_db;
    rt.hist_scorer = [base, sigma_n2, rule, hist_db](int truth_n) {
      NljScenario s = base;
      s.jnr = db_to_linear(hist_db);
      return make_nlj_scorer(s, sigma_n2, rule, truth_n);
    };
  } else if (cfg.scenario == "cj") {
    CjScenario base;
    base.n_channels = cfg.n;
    base.target_angle = deg_to_rad(cfg.cj_target_angle_deg);
    for (double deg : cfg.cj_jammer_angles_deg) base.jammer_angles.push_back(deg_to_rad(deg));
    base.snr = db_to_linear(cfg.snr_db);
    base.clutter = make_clutter(cfg);
    base.training_count = cfg.k;
    base.true_hypothesis = cfg.cj_truth;

    rt.truth_m = cfg.cj_truth;
    rt.max_m = 3;
    rt.hist_point_db = cfg.hist_point_db.value_or(20.0);
    rt.hist_truths = {1, 2, 3};
    const int truth = cfg.cj_truth;
    {
      CjScenario h0 = base;
      h0.jcnr = 1.0;  // unused under H0
      rt.h0 = make_cj_scorer(h0, rule, 0);
    }
    rt.scorer_at_db = [base, rule, truth](double db) {
      CjScenario s = base;
      s.jcnr = db_to_linear(db);
      return make_cj_scorer(s, rule, truth);
    };
    const double hist_db = rt.hist_point_db;
    rt.hist_scorer = [base, rule, hist_db](int truth_n) {
      CjScenario s = base;
      s.jcnr = db_to_linear(hist_db);
      return make_cj_scorer(s, rule, truth_n);
    };
  } else {
    RstScenario base;
    base.n_channels = cfg.n;
    base.window_length = cfg.l;
    base.training_count = cfg.k;
    base.occupied_start = cfg.rst_bins_start;
    base.occupied_size = cfg.rst_bins_size;
    base.clutter = make_clutter(cfg);

    rt.truth_m = window_index(cfg.l, cfg.rst_bins_start, cfg.rst_bins_size);
    rt.max_m = cfg.l * (cfg.l + 1) / 2;
    rt.hist_point_db = cfg.hist_point_db.value_or(rt.sweep_db.back());
    rt.hist_truths = {rt.truth_m};
    rt.estimate = rst_estimate_map(cfg.l);
    rt.truth_size_pos = {static_cast<double>(cfg.rst_bins_size),
                         static_cast<double>(cfg.rst_bins_start)};
    const int truth = rt.truth_m;
    {
      RstScenario h0 = base;
      h0.sinr = 1.0;  // unused under H0
      rt.h0 = make_rst_scorer(h0, rule, 0);
    }
    rt.scorer_at_db = [base, rule, truth](double db) {
      RstScenario s = base;
      s.sinr = db_to_linear(db);
      return make_rst_scorer(s, rule, truth);
    };
    const double hist_db = rt.hist_point_db;
    rt.hist_scorer = [base, rule, hist_db](int truth_n) {
      RstScenario s = base;
      s.sinr = db_to_linear(hist_db);
      return make_rst_scorer(s, rule, truth_n);
    };
  }
  return rt;
}

std::uint64_t calibration_seed(const ExperimentConfig& cfg) {
  return derive_seed(cfg.seed, kSaltCalibration);
}

std::uint64_t pd_stage_seed(const ExperimentConfig& cfg) {
  return derive_seed(cfg.seed, kSaltPdSweep);
}

std::uint64_t hist_stage_seed(const ExperimentConfig& cfg) {
  return derive_seed(cfg.seed, kSaltHistogram);
}

int run_calibrate(const ExperimentConfig& cfg) {
  const ScenarioRuntime rt = make_runtime(cfg);
  const CalibrationSpec spec{cfg.pfa, cfg.trials_calib, calibration_seed(cfg)};
  const double eta = calibrate_threshold(rt.h0, decision_kind(cfg), spec, cfg.threads);
  fs::create_directories(cfg.outdir);
  const fs::path path =
      fs::path(cfg.outdir) / (cfg.scenario + "_" + rule_label(cfg) + "_calibration.json");
  write_calibration_json(path, cfg, eta, spec);
  std::cout << "threshold " << format_g12(eta) << "  (pfa " << cfg.pfa << ", "
            << spec.effective_trials() << " trials)\n";
  std::cout << "wrote " << path.string() << "\n";
  return 0;
}

namespace {

MonteCarloReport build_report(const ExperimentConfig& cfg, const ScenarioRuntime& rt, double eta,
                              const CalibrationSpec& spec, SweepStats stats) {
  MonteCarloReport report;
  report.threshold = eta;
  report.pfa = cfg.pfa;
  report.calibration_trials = spec.effective_trials();
  report.seed = cfg.seed;
  report.truth_m = rt.truth_m;
  report.sweep_axis = rt.sweep_axis;
  report.pd = std::move(stats.pd);
  report.rmse = std::move(stats.rmse);
  report.config_echo = config_echo(cfg);
  return report;
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const ScenarioRuntime rt = make_runtime(cfg);
  const DecisionKind kind = decision_kind(cfg);
  fs::create_directories(cfg.outdir);
  const fs::path base = fs::path(cfg.outdir) / (cfg.scenario + "_" + rule_label(cfg));

  const CalibrationSpec spec{cfg.pfa, cfg.trials_calib, calibration_seed(cfg)};
  const double eta = calibrate_threshold(rt.h0, kind, spec, cfg.threads);
  write_calibration_json(fs::path(base.string() + "_calibration.json"), cfg, eta, spec);

  SweepStats stats = sweep_detection(rt.scorer_at_db, kind, eta, rt.sweep_db, rt.truth_m,
                                     rt.estimate ? &rt.estimate : nullptr, rt.truth_size_pos,
                                     cfg.trials_pd, pd_stage_seed(cfg), cfg.threads);

  const ClassificationHistogram hist =
      classification_histogram(rt.hist_scorer, kind, eta, rt.hist_truths, rt.max_m,
                               cfg.trials_pd, hist_stage_seed(cfg), cfg.threads);

  MonteCarloReport report = build_report(cfg, rt, eta, spec, std::move(stats));
  report.histogram = hist;

  emit_pd_outputs(cfg, rt, report, base);
  write_hist_json(fs::path(base.string() + "_hist.json"), cfg, hist, rt.hist_point_db);
  write_report_json(fs::path(base.string() + "_report.json"), report);

  print_summary(cfg, rt, eta, report);
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  std::cout << "outputs under " << cfg.outdir << "  (" << elapsed.count() / 1000.0 << " s)\n";
  return 0;
}

int run_sweep(const ExperimentConfig& cfg, std::optional<double> eta,
              const std::optional<fs::path>& calibration_json) {
  const ScenarioRuntime rt = make_runtime(cfg);
  if (!eta && calibration_json) {
    std::ifstream in(*calibration_json);
    if (!in) {
      throw invalid_config("calibration: cannot open " + calibration_json->string());
    }
    json j;
    in >> j;
    eta = j.at("threshold").get<double>();
  }
  if (!eta) {
    throw invalid_config("eta: sweep needs --eta or --calibration");
  }
  fs::create_directories(cfg.outdir);
  const fs::path base = fs::path(cfg.outdir) / (cfg.scenario + "_" + rule_label(cfg));

  SweepStats stats = sweep_detection(rt.scorer_at_db, decision_kind(cfg), *eta, rt.sweep_db,
                                     rt.truth_m, rt.estimate ? &rt.estimate : nullptr,
                                     rt.truth_size_pos, cfg.trials_pd, pd_stage_seed(cfg),
                                     cfg.threads);
  CalibrationSpec spec{cfg.pfa, cfg.trials_calib, calibration_seed(cfg)};
  MonteCarloReport report = build_report(cfg, rt, *eta, spec, std::move(stats));
  emit_pd_outputs(cfg, rt, report, base);
  write_report_json(fs::path(base.string() + "_report.json"), report);
  print_summary(cfg, rt, *eta, report);
  return 0;
}

int replay_trial(const ExperimentConfig& cfg, const std::string& stage, std::size_t point,
                 std::uint64_t trial, std::optional<double> eta) {
  const ScenarioRuntime rt = make_runtime(cfg);
  ScoreSampler scorer;
  std::uint64_t stream_base = 0;
  std::string detail;
  if (stage == "calib") {
    scorer = rt.h0;
    stream_base = calibration_seed(cfg);
    detail = "H0 calibration";
  } else if (stage == "pd") {
    if (point >= rt.sweep_db.size()) {
      throw invalid_input("point: sweep has " + std::to_string(rt.sweep_db.size()) + " points");
    }
    scorer = rt.scorer_at_db(rt.sweep_db[point]);
    stream_base = point_seed(pd_stage_seed(cfg), point);
    detail = rt.sweep_axis + "=" + format_g12(rt.sweep_db[point]) + " dB, truth m=" +
             std::to_string(rt.truth_m);
  } else if (stage == "hist") {
    if (point >= rt.hist_truths.size()) {
      throw invalid_input("point: histogram has " + std::to_string(rt.hist_truths.size()) +
                          " rows");
    }
    scorer = rt.hist_scorer(rt.hist_truths[point]);
    stream_base = point_seed(hist_stage_seed(cfg), point);
    detail = "truth m=" + std::to_string(rt.hist_truths[point]) + " at " +
             format_g12(rt.hist_point_db) + " dB";
  } else {
    throw invalid_config("stage: must be calib|pd|hist");
  }

  SeededRng rng(stream_base, trial);
  const std::vector<HypothesisScore> scores = scorer(rng);

  std::cout << "stage " << stage << " (" << detail << "), trial " << trial << ", stream ("
            << stream_base << ", " << trial << ")\n";
  std::cout << std::left << std::setw(6) << "m" << std::setw(26) << "lambda" << std::setw(8)
            << "p" << std::setw(26) << "penalty" << "penalized\n";
  char lambda_buf[32], pen_buf[32], net_buf[32];
  for (const HypothesisScore& s : scores) {
    std::snprintf(lambda_buf, sizeof(lambda_buf), "%.17g", s.lambda);
    std::snprintf(pen_buf, sizeof(pen_buf), "%.17g", s.penalty);
    std::snprintf(net_buf, sizeof(net_buf), "%.17g", s.lambda - s.penalty);
    std::cout << std::left << std::setw(6) << s.m << std::setw(26) << lambda_buf << std::setw(8)
              << s.p << std::setw(26) << pen_buf << net_buf << "\n";
  }
  if (eta) {
    const Decision d = decide(scores, decision_kind(cfg), *eta);
    std::cout << "decision @ eta=" << format_g12(*eta) << ": "
              << (d.detected ? "detected m_hat=" + std::to_string(d.m_hat) : "H0")
              << " score=" << format_g12(d.score) << "\n";
  }
  return 0;
}

}  // namespace klic::cli
