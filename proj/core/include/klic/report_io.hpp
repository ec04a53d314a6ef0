#pragma once

#include <filesystem>
#include <string>

#include "klic/montecarlo.hpp"

namespace klic {

// Values are printed with 12 significant digits so emitted files round-trip.
std::string format_g12(double v);

// Pd curve CSV: config-echo comment lines, then
//   sweep_value,pd,std_err,trials
void write_pd_csv(const std::filesystem::path& path, const MonteCarloReport& report);

// RMSE CSV: sweep_value,rmse_size,rmse_position,detected,trials
void write_rmse_csv(const std::filesystem::path& path, const MonteCarloReport& report);

// Full report as JSON (threshold, curves, histogram, config echo, seed).
void write_report_json(const std::filesystem::path& path, const MonteCarloReport& report);

// Parses a CSV produced by write_pd_csv. Comment lines are returned through
// `echo` when non-null.
PdCurve read_pd_csv(const std::filesystem::path& path,
                    std::vector<std::pair<std::string, std::string>>* echo = nullptr);

}  // namespace klic
