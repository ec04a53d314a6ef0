#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <klic/report_io.hpp>

#include "../tools/experiment.hpp"

namespace fs = std::filesystem;

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

CommandResult run_command(const std::string& cmd) {
  CommandResult result;
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) {
    result.output.append(buf.data(), n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string binary() {
  const char* bin = std::getenv("KLIC_BIN");
  REQUIRE(bin != nullptr);
  return bin;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "klic_cli_smoke" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

const std::string kNljArgs =
    " --scenario nlj --rule gic --rho 2 --pfa 2e-2 --trials-calib 1500 --trials-pd 400"
    " --sweep jnr:3:15:6 --seed 11";

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("run pipeline emits the full artifact set") {
  const fs::path dir = fresh_dir("run");
  const CommandResult r =
      run_command(binary() + " run" + kNljArgs + " --outdir " + dir.string());
  CHECK(r.exit_code == 0);
  for (const char* name : {"nlj_gic_calibration.json", "nlj_gic_pd.csv", "nlj_gic_pd.svg",
                           "nlj_gic_hist.json", "nlj_gic_report.json"}) {
    CHECK_MESSAGE(fs::exists(dir / name), name);
  }

  std::vector<std::pair<std::string, std::string>> echo;
  const klic::PdCurve curve = klic::read_pd_csv(dir / "nlj_gic_pd.csv", &echo);
  REQUIRE(curve.size() == 3);
  CHECK(curve.front().sweep_value == 3.0);
  CHECK(curve.back().sweep_value == 15.0);
  // detection improves along the sweep
  CHECK(curve.back().pd >= curve.front().pd);
  CHECK(curve.back().pd > 0.9);
  bool has_scenario = false;
  for (const auto& [key, value] : echo) {
    has_scenario |= (key == "scenario" && value == "nlj");
  }
  CHECK(has_scenario);
}

TEST_CASE("rst run emits the RMSE table as well") {
  const fs::path dir = fresh_dir("rst");
  const CommandResult r = run_command(
      binary() +
      " run --scenario rst --rule gic --rho 15 --pfa 5e-2 --trials-calib 500 --trials-pd 150"
      " --sweep sinr:25:35:10 --seed 3 --outdir " +
      dir.string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(dir / "rst_gic_rmse.csv"));
  CHECK(fs::exists(dir / "rst_gic_rmse.svg"));
  CHECK(fs::exists(dir / "rst_gic_pd.csv"));

  // default bins {4,5} with L=10 key the report by hypothesis 14
  std::ifstream in(dir / "rst_gic_report.json");
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str().find("\"truth_m\": 14") != std::string::npos);
}

TEST_CASE("sweep consumes a calibration file") {
  const fs::path dir = fresh_dir("sweep");
  const CommandResult calib =
      run_command(binary() + " calibrate" + kNljArgs + " --outdir " + dir.string());
  CHECK(calib.exit_code == 0);
  const fs::path calibration = dir / "nlj_gic_calibration.json";
  REQUIRE(fs::exists(calibration));

  const CommandResult swept =
      run_command(binary() + " sweep" + kNljArgs + " --outdir " + dir.string() +
                  " --calibration " + calibration.string());
  CHECK(swept.exit_code == 0);
  CHECK(fs::exists(dir / "nlj_gic_pd.csv"));

  const CommandResult missing =
      run_command(binary() + " sweep" + kNljArgs + " --outdir " + dir.string());
  CHECK(missing.exit_code == 2);
}

TEST_CASE("replay reproduces the batch trial bit-for-bit") {
  using namespace klic::cli;
  ExperimentConfig cfg = load_config(std::nullopt, {{"scenario", "nlj"},
                                                    {"rule", "gic"},
                                                    {"rho", "2"},
                                                    {"sweep", "jnr:3:15:6"},
                                                    {"seed", "11"}});
  const ScenarioRuntime rt = make_runtime(cfg);
  // recompute the exact scores the pd stage used for point 1, trial 5
  klic::SeededRng rng(klic::point_seed(pd_stage_seed(cfg), 1), 5);
  const std::vector<klic::HypothesisScore> expected = rt.scorer_at_db(rt.sweep_db[1])(rng);

  const CommandResult r = run_command(binary() + " replay" + kNljArgs +
                                      " --stage pd --point 1 --trial 5");
  CHECK(r.exit_code == 0);
  for (const klic::HypothesisScore& s : expected) {
    char lambda[32];
    std::snprintf(lambda, sizeof(lambda), "%.17g", s.lambda);
    CHECK_MESSAGE(r.output.find(lambda) != std::string::npos, "missing lambda ", lambda);
  }

  // identical invocation, identical bytes
  const CommandResult again = run_command(binary() + " replay" + kNljArgs +
                                          " --stage pd --point 1 --trial 5");
  CHECK(again.output == r.output);

  // negative control: tampered seed changes the draw
  const CommandResult tampered = run_command(
      binary() +
      " replay --scenario nlj --rule gic --rho 2 --pfa 2e-2 --sweep jnr:3:15:6 --seed 12"
      " --stage pd --point 1 --trial 5");
  CHECK(tampered.exit_code == 0);
  CHECK(tampered.output != r.output);
}

TEST_CASE("invalid configurations are rejected with diagnostics naming the key") {
  const CommandResult r =
      run_command(binary() + " run --scenario nlj --rule gic --rho 0.5 --outdir /tmp/unused");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("rho") != std::string::npos);

  const CommandResult bad_key =
      run_command(binary() + " run --scenario warp --outdir /tmp/unused");
  CHECK(bad_key.exit_code == 2);
  CHECK(bad_key.output.find("scenario") != std::string::npos);
}

TEST_CASE("config file values are overridden by flags") {
  const fs::path dir = fresh_dir("config");
  const fs::path file = dir / "exp.cfg";
  {
    std::FILE* f = std::fopen(file.c_str(), "w");
    REQUIRE(f);
    std::fputs("scenario = nlj\nrule = half_p\nseed = 5\n# comment\ntrials_pd = 200\n", f);
    std::fclose(f);
  }
  using namespace klic::cli;
  const ExperimentConfig cfg = load_config(file, {{"rule", "bic_k"}});
  CHECK(cfg.scenario == "nlj");
  CHECK(cfg.rule == "bic_k");
  CHECK(cfg.seed == 5);
  CHECK(cfg.trials_pd == 200);
}

TEST_SUITE_END();
