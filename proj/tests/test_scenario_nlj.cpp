#include <doctest.h>

#include <klic/scenario_nlj.hpp>
#include <klic/signal_model.hpp>

#include "oracle_statistics.hpp"
#include "test_util.hpp"

using namespace klic;

namespace {

NljStatisticInput input_from(std::vector<double> ev, int k, int max_order) {
  NljStatisticInput in;
  in.gram_eigenvalues = std::move(ev);
  in.sample_count = k;
  in.max_order = max_order;
  return in;
}

std::vector<double> wishart_eigenvalues(std::uint64_t stream, int n, int k) {
  SeededRng rng(909, stream);
  const cmat z = testutil::random_cmat(rng, n, k);
  const rvec ev = psd_eigenvalues(z * z.adjoint());
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace

TEST_SUITE_BEGIN("scenario-nlj");

TEST_CASE("equal eigenvalues collapse every order to zero") {
  const NljStatisticInput in = input_from(std::vector<double>(16, 3.7), 32, 6);
  for (int m = 1; m <= 6; ++m) {
    CHECK(std::abs(nlj_glr(in, m)) < 1e-10);
  }
}

TEST_CASE("the statistic is scale invariant") {
  const std::vector<double> base = wishart_eigenvalues(0, 16, 32);
  for (double c : {1e-6, 0.1, 7.0, 4096.0}) {
    std::vector<double> scaled = base;
    for (double& g : scaled) {
      g *= c;
    }
    const NljStatisticInput a = input_from(base, 32, 6);
    const NljStatisticInput b = input_from(scaled, 32, 6);
    for (int m = 1; m <= 6; ++m) {
      CHECK(testutil::rel_err(nlj_glr(b, m), nlj_glr(a, m)) < 1e-10);
    }
  }
}

TEST_CASE("production statistic matches the direct transcription") {
  SeededRng rng(910, 0);
  const cmat z = testutil::random_cmat(rng, 16, 32);
  const cmat gram = z * z.adjoint();

  const rvec ev = psd_eigenvalues(gram);
  const NljStatisticInput in =
      input_from({ev.data(), ev.data() + ev.size()}, 32, 6);
  // the oracle recomputes eigenvalues through the general solver
  const std::vector<double> ev_oracle = oracle::descending_eigenvalues_general(gram);
  for (int m = 1; m <= 6; ++m) {
    CHECK(testutil::rel_err(nlj_glr(in, m), oracle::nlj_glr(ev_oracle, 32, m)) < 1e-10);
  }
}

TEST_CASE("batch evaluation agrees with the single-order path") {
  const NljStatisticInput in = input_from(wishart_eigenvalues(3, 16, 32), 32, 6);
  const std::vector<double> all = nlj_glr_all(in);
  for (int m = 1; m <= 6; ++m) {
    CHECK(testutil::rel_err(all[m - 1], nlj_glr(in, m)) < 1e-12);
  }
}

TEST_CASE("parameter counts") {
  CHECK(nlj_param_count(1, 16) == 32);
  CHECK(nlj_param_count(3, 16) == 88);
  CHECK(nlj_param_count(16, 16) == 16 * 16 + 1);
  CHECK_THROWS_AS(nlj_param_count(0, 16), invalid_input);
}

TEST_CASE("degenerate eigenvalue sets are rejected") {
  CHECK_THROWS_AS(nlj_glr(input_from(std::vector<double>(16, 0.0), 32, 6), 1),
                  degenerate_input);
  std::vector<double> ev(16, 0.0);
  ev[0] = 1.0;
  CHECK_THROWS_AS(nlj_glr(input_from(ev, 32, 6), 2), degenerate_input);
  std::vector<double> unsorted = wishart_eigenvalues(4, 16, 32);
  std::swap(unsorted[2], unsorted[3]);
  CHECK_THROWS_AS(nlj_glr(input_from(unsorted, 32, 6), 1), invalid_input);
}

TEST_CASE("nonnegative and nondecreasing over nested orders") {
  for (std::uint64_t rep = 0; rep < 20; ++rep) {
    const NljStatisticInput in = input_from(wishart_eigenvalues(100 + rep, 16, 32), 32, 6);
    const std::vector<double> all = nlj_glr_all(in);
    CHECK(all[0] >= -1e-9);
    for (int m = 1; m < 6; ++m) {
      CHECK(all[m] >= all[m - 1] - 1e-9);
    }
  }
}

TEST_CASE("white data ranks hypotheses by penalty alone") {
  // Z with orthonormal-scaled columns so Z Z† = c I: lambdas all vanish and the
  // smallest parameter count wins the penalized argmax.
  const int n = 8;
  cmat z = 3.0 * cmat::Identity(n, n);
  const std::vector<HypothesisScore> scores = nlj_scores(z, PenaltyRule::gic(2.0), 4);
  REQUIRE(scores.size() == 4);
  for (const HypothesisScore& s : scores) {
    CHECK(std::abs(s.lambda) < 1e-9);
  }
  const Decision d = one_stage_decide(scores, -1e9);
  CHECK(d.m_hat == 1);
  for (int m = 2; m <= 4; ++m) {
    CHECK(scores[m - 1].penalty > scores[m - 2].penalty);
  }
}

TEST_CASE("scores wire the parameter counts and sample-size arguments") {
  SeededRng rng(911, 0);
  const cmat z = testutil::random_cmat(rng, 16, 32);
  const std::vector<HypothesisScore> bic_t = nlj_scores(z, PenaltyRule::bic_t(), 6);
  const std::vector<HypothesisScore> bic_k = nlj_scores(z, PenaltyRule::bic_k(), 6);
  for (int m = 1; m <= 6; ++m) {
    CHECK(bic_t[m - 1].p == nlj_param_count(m, 16));
    CHECK(bic_t[m - 1].penalty ==
          doctest::Approx(bic_t[m - 1].p / 2.0 * std::log(2.0 * 32 * 16)));
    CHECK(bic_k[m - 1].penalty == doctest::Approx(bic_k[m - 1].p / 2.0 * std::log(32.0)));
    CHECK(bic_t[m - 1].lambda == bic_k[m - 1].lambda);
  }
}

TEST_SUITE_END();
