#include <doctest.h>

#include <klic/scenario_rst.hpp>
#include <klic/signal_model.hpp>

#include "oracle_statistics.hpp"
#include "test_util.hpp"

using namespace klic;

namespace {

RstStatisticInput random_instance(std::uint64_t stream, int n = 16, int l = 10, int k = 32) {
  SeededRng rng(555, stream);
  RstStatisticInput in;
  in.window = testutil::random_cmat(rng, n, l);
  in.training = testutil::random_cmat(rng, n, k);
  in.v = steering_vector({n, 0.0});
  return in;
}

}  // namespace

TEST_SUITE_BEGIN("scenario-rst");

TEST_CASE("window enumeration for L = 10") {
  const std::vector<WindowHypothesis> windows = enumerate_windows(10);
  REQUIRE(windows.size() == 55);
  CHECK(windows[13].m == 14);
  CHECK(windows[13].start == 4);
  CHECK(windows[13].size == 2);
  CHECK(windows[0].start == 1);
  CHECK(windows[0].size == 1);
  CHECK(windows[54].size == 10);
  CHECK(window_index(10, 4, 2) == 14);
}

TEST_CASE("window enumeration edge cases and inverse") {
  const std::vector<WindowHypothesis> single = enumerate_windows(1);
  REQUIRE(single.size() == 1);
  CHECK(single[0].start == 1);
  CHECK(single[0].size == 1);

  for (int l : {1, 3, 7, 10}) {
    for (const WindowHypothesis& w : enumerate_windows(l)) {
      CHECK(window_index(l, w.start, w.size) == w.m);
    }
  }
  CHECK_THROWS_AS(window_index(10, 10, 2), invalid_input);
  CHECK_THROWS_AS(enumerate_windows(0), invalid_input);
}

TEST_CASE("parameter counts") {
  CHECK(rst_param_count(2, 16) == 261);
  CHECK(rst_param_count(1, 16) == 259);
  for (int size = 1; size < 10; ++size) {
    CHECK(rst_param_count(size + 1, 16) - rst_param_count(size, 16) == 2);
  }
}

TEST_CASE("global scaling leaves every window statistic unchanged") {
  const RstStatisticInput base = random_instance(0);
  const std::vector<double> want = rst_glr_all(base);
  for (double c : {1e-2, 3.0, 256.0}) {
    RstStatisticInput scaled = base;
    scaled.window = c * base.window;
    scaled.training = c * base.training;
    const std::vector<double> got = rst_glr_all(scaled);
    for (std::size_t i = 0; i < want.size(); ++i) {
      CHECK(testutil::rel_err(got[i], want[i]) < 1e-9);
    }
  }
}

TEST_CASE("statistics stay nonnegative on signal-free data") {
  for (std::uint64_t rep = 0; rep < 100; ++rep) {
    const RstStatisticInput in = random_instance(100 + rep, 8, 6, 16);
    for (double lambda : rst_glr_all(in)) {
      CHECK(lambda >= -1e-9);
    }
  }
}

TEST_CASE("production statistic matches the naive transcription") {
  const RstStatisticInput in = random_instance(1);
  const std::vector<WindowHypothesis> windows = enumerate_windows(10);
  const std::vector<double> got = rst_glr_all(in);
  for (const WindowHypothesis& w : {windows[0], windows[13], windows[30], windows[54]}) {
    const double want = oracle::rst_glr(in.window, in.training, in.v, w.start, w.size);
    CHECK(testutil::rel_err(got[w.m - 1], want) < 1e-9);
    CHECK(testutil::rel_err(rst_glr(in, w), want) < 1e-9);
  }
}

TEST_CASE("a length-one range interval reduces to a single GLRT hypothesis") {
  const RstStatisticInput in = random_instance(2, 8, 1, 16);
  const std::vector<HypothesisScore> scores = rst_scores(in, PenaltyRule::gic(2.0));
  REQUIRE(scores.size() == 1);
  CHECK(scores[0].m == 1);
  CHECK(scores[0].p == rst_param_count(1, 8));
}

TEST_CASE("singular training Gram is rejected") {
  RstStatisticInput in = random_instance(3);
  in.training = cmat::Zero(16, 32);
  CHECK_THROWS_AS(rst_glr_all(in), singular_matrix);
  RstStatisticInput thin = random_instance(4);
  thin.training = thin.training.leftCols(8).eval();
  CHECK_THROWS_AS(rst_glr_all(thin), invalid_input);
}

TEST_CASE("scores enumerate all windows with their penalties") {
  const RstStatisticInput in = random_instance(5);
  const std::vector<HypothesisScore> scores = rst_scores(in, PenaltyRule::bic_t());
  REQUIRE(scores.size() == 55);
  const double t = 2.0 * (10 + 32) * 16;
  for (const HypothesisScore& s : scores) {
    CHECK(s.m >= 1);
    CHECK(s.penalty == doctest::Approx(s.p / 2.0 * std::log(t)));
  }
  CHECK(scores[13].p == 261);
}

TEST_SUITE_END();
