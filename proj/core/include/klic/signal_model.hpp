#pragma once

#include <vector>

#include "klic/linalg.hpp"
#include "klic/rng.hpp"

namespace klic {

struct SteeringParams {
  int n_channels = 0;  // N >= 2
  double theta = 0.0;  // radians from boresight, |theta| < pi/2
};

// Unit-norm uniform-linear-array response: entry n = exp(j pi n sin(theta)) / sqrt(N).
cvec steering_vector(const SteeringParams& p);

enum class NoisePlacement {
  DiagonalOnly,  // M = sigma_n^2 I + sigma_c^2 [rho^|n-m|]
  AllEntries,    // M(n,m) = sigma_n^2 + sigma_c^2 rho^|n-m|
};

struct ClutterModel {
  double sigma_n2 = 1.0;  // noise power, > 0
  double sigma_c2 = 0.0;  // clutter power, >= 0
  double rho_c = 0.0;     // one-lag correlation coefficient in [0, 1)
  NoisePlacement noise_placement = NoisePlacement::DiagonalOnly;

  double cnr() const noexcept { return sigma_c2 / sigma_n2; }
};

HermitianMatrix clutter_covariance(const ClutterModel& c, int n);

// ---------------------------------------------------------------------------
// Noise-like jammers: K snapshots, covariance sigma_n^2 I (+ jammer component).

struct NljScenario {
  int n_channels = 16;                // N
  std::vector<double> jammer_angles;  // radians, one per jammer direction
  double jnr = 0.0;                   // linear, relative to sigma_n^2
  int max_order = 1;                  // N_J, candidate ranks 1..N_J
  int sample_count = 32;              // K

  void validate() const;
};

// Jammer-plus-noise covariance sigma_n^2 (I + jnr * sum_i v_i v_i†) over all
// configured jammer directions.
HermitianMatrix nlj_covariance(const NljScenario& s, double sigma_n2);

class NljSampler {
 public:
  NljSampler(const NljScenario& s, double sigma_n2);

  // m = 0 draws H0 (noise only); 1 <= m <= #jammer_angles draws the covariance
  // built from the first m directions. Columns are i.i.d. snapshots.
  DataMatrix sample(int hypothesis_m, SeededRng& rng) const;

  int n_channels() const noexcept { return n_; }
  int sample_count() const noexcept { return k_; }

 private:
  int n_ = 0;
  int k_ = 0;
  std::vector<cmat> factors_;  // index m in [0, #angles]
};

DataMatrix sample_under_hypothesis(const NljScenario& s, int hypothesis_m, SeededRng& rng,
                                   double sigma_n2 = 1.0);

// ---------------------------------------------------------------------------
// Coherent jammer: one cell under test plus K training snapshots.

struct CjScenario {
  int n_channels = 16;
  double target_angle = 0.0;          // radians
  std::vector<double> jammer_angles;  // q directions spanning the jammer subspace
  double snr = 0.0;                   // linear: |alpha|^2 v† M^{-1} v
  double jcnr = 0.0;                  // linear: q† M^{-1} q
  ClutterModel clutter;
  int training_count = 32;   // K >= N
  int true_hypothesis = 3;   // index in {0, 1, 2, 3}

  void validate() const;
  int subspace_dim() const noexcept { return static_cast<int>(jammer_angles.size()); }
};

struct CjSample {
  cvec z;               // cell under test
  DataMatrix training;  // N x K
};

class CjSampler {
 public:
  explicit CjSampler(const CjScenario& s);

  // hypothesis in {0,1,2,3}: H0 noise, H1 jammer, H2 target, H3 target+jammer.
  // Target and jammer amplitudes get independent uniform phases per trial.
  CjSample sample(int hypothesis, SeededRng& rng) const;

  const cvec& target_steering() const noexcept { return v_; }
  const cmat& jammer_basis() const noexcept { return basis_; }
  const HermitianMatrix& icm() const noexcept { return icm_; }
  // Deterministic amplitude magnitudes implied by the configured power ratios.
  double alpha_magnitude() const noexcept { return alpha_mag_; }
  const cvec& jammer_signature() const noexcept { return signature_; }  // beta * v(theta_sig)

 private:
  CjScenario cfg_;
  cvec v_;
  cmat basis_;
  HermitianMatrix icm_;
  cvec signature_;
  double alpha_mag_ = 0.0;
  CnSampler noise_;
};

CjSample sample_under_hypothesis(const CjScenario& s, int hypothesis, SeededRng& rng);

// ---------------------------------------------------------------------------
// Range-spread target: window of L cells plus K training snapshots.

struct RstScenario {
  int n_channels = 16;
  double target_angle = 0.0;
  int window_length = 10;  // L
  int training_count = 32;  // K >= N
  int occupied_start = 1;   // 1-based first occupied bin (truth)
  int occupied_size = 1;    // contiguous occupied bins (truth)
  double sinr = 0.0;        // linear: sum_l |alpha_l|^2 v† M^{-1} v
  ClutterModel clutter;

  void validate() const;
};

struct RstSample {
  DataMatrix window;    // N x L
  DataMatrix training;  // N x K
};

class RstSampler {
 public:
  explicit RstSampler(const RstScenario& s);

  // m = 0 draws H0; m >= 1 occupies the m-th window of the size-major /
  // start-ascending enumeration at the scenario SINR. Amplitudes share a
  // common magnitude and draw independent uniform phases per bin per trial.
  RstSample sample(int hypothesis_m, SeededRng& rng) const;

  const cvec& target_steering() const noexcept { return v_; }
  const HermitianMatrix& icm() const noexcept { return icm_; }
  double amplitude_magnitude(int window_size) const;
  // Enumeration index of the scenario's own occupied bins.
  int truth_index() const noexcept { return truth_m_; }

 private:
  RstScenario cfg_;
  cvec v_;
  HermitianMatrix icm_;
  double v_m_inv_v_ = 0.0;  // v† M^{-1} v
  int truth_m_ = 0;
  CnSampler noise_;
};

RstSample sample_under_hypothesis(const RstScenario& s, int hypothesis_m, SeededRng& rng);

}  // namespace klic
