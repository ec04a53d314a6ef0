#include <benchmark/benchmark.h>

#include <numbers>

#include <klic/detectors.hpp>

using namespace klic;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

NljScenario nlj_scenario() {
  NljScenario s;
  s.n_channels = 16;
  s.jammer_angles = {10.0 * kDeg, 20.0 * kDeg, -15.0 * kDeg};
  s.jnr = 10.0;
  s.max_order = 6;
  s.sample_count = 32;
  return s;
}

CjScenario cj_scenario() {
  CjScenario s;
  s.n_channels = 16;
  s.jammer_angles = {35.0 * kDeg, 40.0 * kDeg, 45.0 * kDeg};
  s.snr = 100.0;
  s.jcnr = 100.0;
  s.clutter = {1.0, 100.0, 0.95, NoisePlacement::DiagonalOnly};
  s.training_count = 32;
  return s;
}

RstScenario rst_scenario() {
  RstScenario s;
  s.n_channels = 16;
  s.window_length = 10;
  s.training_count = 32;
  s.occupied_start = 4;
  s.occupied_size = 2;
  s.sinr = 100.0;
  s.clutter = {1.0, 100.0, 0.95, NoisePlacement::DiagonalOnly};
  return s;
}

void BM_NljTrial(benchmark::State& state) {
  const NljSampler sampler(nlj_scenario(), 1.0);
  const PenaltyRule rule = PenaltyRule::gic(2.0);
  std::uint64_t trial = 0;
  for (auto _ : state) {
    SeededRng rng(1, trial++);
    benchmark::DoNotOptimize(nlj_scores(sampler.sample(3, rng), rule, 6));
  }
}
BENCHMARK(BM_NljTrial);

void BM_CjTrial(benchmark::State& state) {
  const CjSampler sampler(cj_scenario());
  const PenaltyRule rule = PenaltyRule::gic(2.0);
  std::uint64_t trial = 0;
  for (auto _ : state) {
    SeededRng rng(1, trial++);
    const CjSample data = sampler.sample(3, rng);
    benchmark::DoNotOptimize(cj_scores(data.z, data.training, sampler.target_steering(),
                                       sampler.jammer_basis(), rule));
  }
}
BENCHMARK(BM_CjTrial);

void BM_RstTrial(benchmark::State& state) {
  const RstSampler sampler(rst_scenario());
  const PenaltyRule rule = PenaltyRule::gic(15.0);
  std::uint64_t trial = 0;
  for (auto _ : state) {
    SeededRng rng(1, trial++);
    const RstSample data = sampler.sample(14, rng);
    RstStatisticInput in;
    in.window = data.window;
    in.training = data.training;
    in.v = sampler.target_steering();
    benchmark::DoNotOptimize(rst_scores(in, rule));
  }
}
BENCHMARK(BM_RstTrial);

void BM_RstGlrAll(benchmark::State& state) {
  const RstSampler sampler(rst_scenario());
  SeededRng rng(1, 0);
  const RstSample data = sampler.sample(14, rng);
  RstStatisticInput in;
  in.window = data.window;
  in.training = data.training;
  in.v = sampler.target_steering();
  for (auto _ : state) {
    benchmark::DoNotOptimize(rst_glr_all(in));
  }
}
BENCHMARK(BM_RstGlrAll);

void BM_HermitianEig16(benchmark::State& state) {
  SeededRng rng(2, 0);
  cmat z(16, 32);
  for (int j = 0; j < 32; ++j) {
    for (int i = 0; i < 16; ++i) {
      z(i, j) = rng.cnormal();
    }
  }
  const cmat gram = z * z.adjoint();
  for (auto _ : state) {
    benchmark::DoNotOptimize(psd_eigenvalues(gram));
  }
}
BENCHMARK(BM_HermitianEig16);

}  // namespace

BENCHMARK_MAIN();
