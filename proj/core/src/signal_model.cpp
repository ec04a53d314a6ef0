#include "klic/signal_model.hpp"

#include <cmath>
#include <numbers>

#include "klic/scenario_rst.hpp"

namespace klic {

namespace {

constexpr double kPi = std::numbers::pi;

double quadratic_form(const HermitianMatrix& m, const cvec& x) {
  // x† M^{-1} x, real for Hermitian PD M
  const cvec sol = chol_solve(m, x);
  return std::real(x.dot(sol));
}

}  // namespace

cvec steering_vector(const SteeringParams& p) {
  if (p.n_channels < 2) {
    throw invalid_input("steering_vector: need at least two channels");
  }
  if (!(std::abs(p.theta) < kPi / 2)) {
    throw invalid_input("steering_vector: angle must satisfy |theta| < pi/2");
  }
  const double phase_step = kPi * std::sin(p.theta);
  const double scale = 1.0 / std::sqrt(static_cast<double>(p.n_channels));
  cvec v(p.n_channels);
  for (int n = 0; n < p.n_channels; ++n) {
    v(n) = std::polar(scale, phase_step * n);
  }
  return v;
}

HermitianMatrix clutter_covariance(const ClutterModel& c, int n) {
  if (c.sigma_n2 <= 0.0 || c.sigma_c2 < 0.0) {
    throw invalid_input("clutter_covariance: invalid power levels");
  }
  if (c.rho_c < 0.0 || c.rho_c >= 1.0) {
    throw invalid_input("clutter_covariance: rho_c must lie in [0, 1)");
  }
  cmat m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double lag = c.sigma_c2 * std::pow(c.rho_c, std::abs(i - j));
      if (c.noise_placement == NoisePlacement::AllEntries) {
        m(i, j) = c.sigma_n2 + lag;
      } else {
        m(i, j) = (i == j) ? c.sigma_n2 + lag : lag;
      }
    }
  }
  return HermitianMatrix::covariance(m);
}

// ---------------------------------------------------------------------------
// Noise-like jammers

void NljScenario::validate() const {
  if (n_channels < 2 || sample_count < 1) {
    throw invalid_config("nlj: need N >= 2 and K >= 1");
  }
  if (max_order < 1 || max_order > n_channels) {
    throw invalid_config("nlj: max_order must lie in [1, N]");
  }
  if (static_cast<int>(jammer_angles.size()) > max_order) {
    throw invalid_config("nlj: more jammer angles than the maximum order");
  }
  if (jnr < 0.0) {
    throw invalid_config("nlj: jnr must be nonnegative");
  }
}

HermitianMatrix nlj_covariance(const NljScenario& s, double sigma_n2) {
  s.validate();
  if (sigma_n2 <= 0.0) {
    throw invalid_input("nlj_covariance: noise power must be positive");
  }
  cmat m = sigma_n2 * cmat::Identity(s.n_channels, s.n_channels);
  for (double theta : s.jammer_angles) {
    const cvec v = steering_vector({s.n_channels, theta});
    m += (s.jnr * sigma_n2) * (v * v.adjoint());
  }
  return HermitianMatrix::covariance(m);
}

NljSampler::NljSampler(const NljScenario& s, double sigma_n2)
    : n_(s.n_channels), k_(s.sample_count) {
  s.validate();
  const int n_jam = static_cast<int>(s.jammer_angles.size());
  factors_.reserve(n_jam + 1);
  for (int m = 0; m <= n_jam; ++m) {
    NljScenario sub = s;
    sub.jammer_angles.assign(s.jammer_angles.begin(), s.jammer_angles.begin() + m);
    const HermitianMatrix cov = nlj_covariance(sub, sigma_n2);
    Eigen::LLT<cmat> llt(cov.mat());
    if (llt.info() != Eigen::Success) {
      throw singular_matrix("NljSampler: covariance factorization failed");
    }
    factors_.push_back(llt.matrixL());
  }
}

DataMatrix NljSampler::sample(int hypothesis_m, SeededRng& rng) const {
  if (hypothesis_m < 0 || hypothesis_m >= static_cast<int>(factors_.size())) {
    throw invalid_input("NljSampler: invalid hypothesis index");
  }
  const cmat& c = factors_[hypothesis_m];
  DataMatrix z(n_, k_);
  cvec w(n_);
  for (int k = 0; k < k_; ++k) {
    for (int i = 0; i < n_; ++i) {
      w(i) = rng.cnormal();
    }
    z.col(k) = c * w;
  }
  return z;
}

DataMatrix sample_under_hypothesis(const NljScenario& s, int hypothesis_m, SeededRng& rng,
                                   double sigma_n2) {
  return NljSampler(s, sigma_n2).sample(hypothesis_m, rng);
}

// ---------------------------------------------------------------------------
// Coherent jammer

void CjScenario::validate() const {
  if (n_channels < 2 || training_count < n_channels) {
    throw invalid_config("cj: need N >= 2 and K >= N");
  }
  if (jammer_angles.empty()) {
    throw invalid_config("cj: jammer subspace needs at least one direction");
  }
  if (snr < 0.0 || jcnr < 0.0) {
    throw invalid_config("cj: power ratios must be nonnegative");
  }
  if (true_hypothesis < 0 || true_hypothesis > 3) {
    throw invalid_config("cj: true_hypothesis must lie in {0,1,2,3}");
  }
}

CjSampler::CjSampler(const CjScenario& s)
    : cfg_((s.validate(), s)),
      v_(steering_vector({s.n_channels, s.target_angle})),
      basis_(s.n_channels, s.subspace_dim()),
      icm_(clutter_covariance(s.clutter, s.n_channels)),
      noise_(cvec::Zero(s.n_channels), icm_) {
  for (int i = 0; i < s.subspace_dim(); ++i) {
    basis_.col(i) = steering_vector({s.n_channels, s.jammer_angles[i]});
  }
  // Columns must be independent of the target steering: the whitened basis
  // keeps full rank after removing the target direction.
  {
    const cmat sol = chol_solve(icm_, basis_);
    Eigen::FullPivLU<cmat> lu((cmat(basis_.adjoint() * sol)));
    if (lu.rank() < s.subspace_dim()) {
      throw invalid_config("cj: jammer subspace basis is rank deficient");
    }
  }
  // Jammer signature on the subspace's second direction when available; the
  // amplitude is set so that q† M^{-1} q equals the configured JCNR.
  const int sig_index = s.subspace_dim() >= 2 ? 1 : 0;
  const cvec sig_dir = basis_.col(sig_index);
  const double sig_gain = quadratic_form(icm_, sig_dir);
  signature_ = std::sqrt(s.jcnr / sig_gain) * sig_dir;
  alpha_mag_ = std::sqrt(s.snr / quadratic_form(icm_, v_));
}

CjSample CjSampler::sample(int hypothesis, SeededRng& rng) const {
  if (hypothesis < 0 || hypothesis > 3) {
    throw invalid_input("CjSampler: invalid hypothesis index");
  }
  const bool has_target = hypothesis == 2 || hypothesis == 3;
  const bool has_jammer = hypothesis == 1 || hypothesis == 3;
  cvec z = cvec::Zero(cfg_.n_channels);
  if (has_target) {
    const double phase = 2.0 * kPi * rng.uniform();
    z += std::polar(alpha_mag_, phase) * v_;
  }
  if (has_jammer) {
    const double phase = 2.0 * kPi * rng.uniform();
    z += std::polar(1.0, phase) * signature_;
  }
  z += noise_.draw(rng);
  DataMatrix training(cfg_.n_channels, cfg_.training_count);
  for (int k = 0; k < cfg_.training_count; ++k) {
    training.col(k) = noise_.draw(rng);
  }
  return {std::move(z), std::move(training)};
}

CjSample sample_under_hypothesis(const CjScenario& s, int hypothesis, SeededRng& rng) {
  return CjSampler(s).sample(hypothesis, rng);
}

// ---------------------------------------------------------------------------
// Range-spread target

void RstScenario::validate() const {
  if (n_channels < 2 || training_count < n_channels) {
    throw invalid_config("rst: need N >= 2 and K >= N");
  }
  if (window_length < 1) {
    throw invalid_config("rst: window length must be positive");
  }
  if (occupied_size < 1 || occupied_start < 1 ||
      occupied_start + occupied_size - 1 > window_length) {
    throw invalid_config("rst: occupied bins must be a contiguous subset of the window");
  }
  if (sinr < 0.0) {
    throw invalid_config("rst: sinr must be nonnegative");
  }
}

RstSampler::RstSampler(const RstScenario& s)
    : cfg_((s.validate(), s)),
      v_(steering_vector({s.n_channels, s.target_angle})),
      icm_(clutter_covariance(s.clutter, s.n_channels)),
      noise_(cvec::Zero(s.n_channels), icm_) {
  v_m_inv_v_ = quadratic_form(icm_, v_);
  truth_m_ = window_index(s.window_length, s.occupied_start, s.occupied_size);
}

double RstSampler::amplitude_magnitude(int window_size) const {
  // Equal magnitudes across occupied bins: sum_l |alpha_l|^2 v† M^{-1} v = SINR.
  return std::sqrt(cfg_.sinr / (window_size * v_m_inv_v_));
}

RstSample RstSampler::sample(int hypothesis_m, SeededRng& rng) const {
  const int total = cfg_.window_length * (cfg_.window_length + 1) / 2;
  if (hypothesis_m < 0 || hypothesis_m > total) {
    throw invalid_input("RstSampler: invalid hypothesis index");
  }
  int start = 0;
  int size = 0;
  if (hypothesis_m > 0) {
    const WindowHypothesis w = enumerate_windows(cfg_.window_length)[hypothesis_m - 1];
    start = w.start;
    size = w.size;
  }
  const double mag = size > 0 ? amplitude_magnitude(size) : 0.0;
  std::vector<cplx> amplitudes(size);
  for (int i = 0; i < size; ++i) {
    amplitudes[i] = std::polar(mag, 2.0 * kPi * rng.uniform());
  }
  DataMatrix window(cfg_.n_channels, cfg_.window_length);
  for (int l = 1; l <= cfg_.window_length; ++l) {
    cvec col = noise_.draw(rng);
    if (l >= start && l < start + size) {
      col += amplitudes[l - start] * v_;
    }
    window.col(l - 1) = col;
  }
  DataMatrix training(cfg_.n_channels, cfg_.training_count);
  for (int k = 0; k < cfg_.training_count; ++k) {
    training.col(k) = noise_.draw(rng);
  }
  return {std::move(window), std::move(training)};
}

RstSample sample_under_hypothesis(const RstScenario& s, int hypothesis_m, SeededRng& rng) {
  return RstSampler(s).sample(hypothesis_m, rng);
}

}  // namespace klic
