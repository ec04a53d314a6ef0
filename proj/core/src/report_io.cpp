#include "klic/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace klic {

namespace {

using nlohmann::json;

void write_echo(std::ostream& out, const MonteCarloReport& report) {
  for (const auto& [key, value] : report.config_echo) {
    out << "# " << key << "=" << value << "\n";
  }
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw invalid_input("report_io: cannot open " + path.string() + " for writing");
  }
  return out;
}

}  // namespace

std::string format_g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_pd_csv(const std::filesystem::path& path, const MonteCarloReport& report) {
  std::ofstream out = open_for_write(path);
  write_echo(out, report);
  out << "sweep_value,pd,std_err,trials\n";
  for (const PdPoint& point : report.pd) {
    out << format_g12(point.sweep_value) << ',' << format_g12(point.pd) << ','
        << format_g12(point.std_err) << ',' << point.trials << "\n";
  }
}

void write_rmse_csv(const std::filesystem::path& path, const MonteCarloReport& report) {
  std::ofstream out = open_for_write(path);
  write_echo(out, report);
  out << "sweep_value,rmse_size,rmse_position,detected,trials\n";
  for (const RmsePoint& point : report.rmse) {
    out << format_g12(point.sweep_value) << ',' << format_g12(point.rmse_size) << ','
        << format_g12(point.rmse_position) << ',' << point.detected << ',' << point.trials
        << "\n";
  }
}

void write_report_json(const std::filesystem::path& path, const MonteCarloReport& report) {
  json j;
  j["threshold"] = report.threshold;
  j["pfa"] = report.pfa;
  j["calibration_trials"] = report.calibration_trials;
  j["seed"] = report.seed;
  j["truth_m"] = report.truth_m;
  j["sweep_axis"] = report.sweep_axis;

  json config = json::object();
  for (const auto& [key, value] : report.config_echo) {
    config[key] = value;
  }
  j["config"] = config;

  json pd = json::array();
  for (const PdPoint& point : report.pd) {
    pd.push_back({{"sweep_value", point.sweep_value},
                  {"pd", point.pd},
                  {"std_err", point.std_err},
                  {"trials", point.trials}});
  }
  j["pd"] = pd;

  if (!report.rmse.empty()) {
    json rmse = json::array();
    for (const RmsePoint& point : report.rmse) {
      rmse.push_back({{"sweep_value", point.sweep_value},
                      {"rmse_size", point.rmse_size},
                      {"rmse_position", point.rmse_position},
                      {"detected", point.detected},
                      {"trials", point.trials}});
    }
    j["rmse"] = rmse;
  }

  if (report.histogram) {
    const ClassificationHistogram& hist = *report.histogram;
    json rows = json::array();
    for (std::size_t i = 0; i < hist.truths.size(); ++i) {
      rows.push_back({{"truth", hist.truths[i]}, {"prob_by_m", hist.prob[i]}});
    }
    j["classification_histogram"] = {
        {"max_m", hist.max_m}, {"trials", hist.trials}, {"rows", rows}};
  }

  std::ofstream out = open_for_write(path);
  out << j.dump(2) << "\n";
}

PdCurve read_pd_csv(const std::filesystem::path& path,
                    std::vector<std::pair<std::string, std::string>>* echo) {
  std::ifstream in(path);
  if (!in) {
    throw invalid_input("report_io: cannot open " + path.string());
  }
  PdCurve curve;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    if (line[0] == '#') {
      if (echo) {
        const std::size_t eq = line.find('=');
        if (eq != std::string::npos) {
          std::string key = line.substr(1, eq - 1);
          while (!key.empty() && key.front() == ' ') key.erase(key.begin());
          echo->emplace_back(key, line.substr(eq + 1));
        }
      }
      continue;
    }
    if (!header_seen) {
      header_seen = true;  // column header row
      continue;
    }
    std::istringstream row(line);
    std::string field;
    PdPoint point;
    std::getline(row, field, ',');
    point.sweep_value = std::stod(field);
    std::getline(row, field, ',');
    point.pd = std::stod(field);
    std::getline(row, field, ',');
    point.std_err = std::stod(field);
    std::getline(row, field, ',');
    point.trials = std::stoull(field);
    curve.push_back(point);
  }
  return curve;
}

}  // namespace klic
