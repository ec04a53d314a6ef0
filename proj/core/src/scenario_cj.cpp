#include "klic/scenario_cj.hpp"

#include <algorithm>
#include <cmath>

namespace klic {

void CjStatisticInput::validate() const {
  const Eigen::Index n = z.size();
  if (n < 2 || s.rows() != n || s.cols() != n || v.size() != n || basis.rows() != n) {
    throw invalid_input("cj statistic: dimension mismatch");
  }
  if (basis.cols() < 1) {
    throw invalid_input("cj statistic: empty jammer subspace");
  }
  if (training_count < 1) {
    throw invalid_input("cj statistic: invalid training count");
  }
}

std::array<double, 3> cj_glr_all(const CjStatisticInput& in) {
  in.validate();
  Eigen::LLT<cmat> llt(in.s);
  if (llt.info() != Eigen::Success) {
    throw singular_matrix("cj_glr: training Gram matrix is not positive definite");
  }
  const cvec x_z = llt.solve(in.z);
  const cvec x_v = llt.solve(in.v);
  const cmat x_j = llt.solve(in.basis);

  const double a = std::real(in.z.dot(x_z));   // z† S^{-1} z
  const double b = std::real(in.v.dot(x_v));   // v† S^{-1} v
  const cplx c = x_v.dot(in.z);                // v† S^{-1} z
  const cvec u = in.basis.adjoint() * x_z;     // J† S^{-1} z
  const cvec w = in.basis.adjoint() * x_v;     // J† S^{-1} v
  const cmat g = in.basis.adjoint() * x_j;     // J† S^{-1} J

  Eigen::LLT<cmat> llt_g(g);
  if (llt_g.info() != Eigen::Success) {
    throw rank_deficient("cj_glr: whitened jammer basis lost full column rank");
  }
  const double t1 = std::real(u.dot(llt_g.solve(u)));
  const double t2 = std::norm(c) / b;

  // m = 3: residual after removing both the target direction and the jammer
  // subspace from the whitened cell. With P the orthogonal projector off the
  // whitened target, (P)^{1/2} = P, and the projected quantities reduce to
  // Gram-form expressions in the solves above.
  const cmat g_perp = g - (w * w.adjoint()) / b;
  const cvec r = u - (c / b) * w;
  Eigen::LLT<cmat> llt_gp(g_perp);
  if (llt_gp.info() != Eigen::Success) {
    throw rank_deficient("cj_glr: jammer basis is not independent of the target steering");
  }
  const double t3 = std::max(a - t2 - std::real(r.dot(llt_gp.solve(r))), 0.0);

  const double scale = in.training_count + 1.0;
  const double log_full = std::log1p(a);
  std::array<double, 3> lambda{};
  lambda[0] = scale * (log_full - std::log1p(std::max(a - t1, 0.0)));
  lambda[1] = scale * (log_full - std::log1p(std::max(a - t2, 0.0)));
  lambda[2] = scale * (log_full - std::log1p(t3));
  return lambda;
}

double cj_glr(const CjStatisticInput& in, int m) {
  if (m < 1 || m > 3) {
    throw invalid_input("cj_glr: hypothesis index must lie in {1,2,3}");
  }
  return cj_glr_all(in)[m - 1];
}

std::array<int, 3> cj_param_counts(int q, int n) {
  if (q < 1 || n < 2) {
    throw invalid_input("cj_param_counts: need q >= 1 and N >= 2");
  }
  const int n2 = n * n;
  return {2 * q + n2, 2 + n2, 2 + 2 * q + n2};
}

std::vector<HypothesisScore> cj_scores(const cvec& z, const DataMatrix& training, const cvec& v,
                                       const cmat& basis, const PenaltyRule& rule) {
  const int n = static_cast<int>(z.size());
  const int k = static_cast<int>(training.cols());
  if (k < n) {
    throw invalid_input("cj_scores: need K >= N training snapshots");
  }
  CjStatisticInput in;
  in.z = z;
  in.s = training * training.adjoint();
  in.v = v;
  in.basis = basis;
  in.training_count = k;

  const std::array<double, 3> lambda = cj_glr_all(in);
  const std::array<int, 3> counts = cj_param_counts(in.subspace_dim(), n);
  const double t_or_k =
      rule.kind == PenaltyKind::BicK ? static_cast<double>(k) : 2.0 * (k + 1.0) * n;
  std::vector<HypothesisScore> scores(3);
  for (int m = 1; m <= 3; ++m) {
    scores[m - 1] = {m, lambda[m - 1], counts[m - 1], penalty(rule, counts[m - 1], t_or_k)};
  }
  return scores;
}

}  // namespace klic
