#include "klic/scenario_rst.hpp"

#include <cmath>

namespace klic {

std::vector<WindowHypothesis> enumerate_windows(int l) {
  if (l < 1) {
    throw invalid_input("enumerate_windows: window length must be positive");
  }
  std::vector<WindowHypothesis> out;
  out.reserve(l * (l + 1) / 2);
  int m = 1;
  for (int size = 1; size <= l; ++size) {
    for (int start = 1; start + size - 1 <= l; ++start) {
      out.push_back({m++, start, size});
    }
  }
  return out;
}

int window_index(int l, int start, int size) {
  if (size < 1 || start < 1 || start + size - 1 > l) {
    throw invalid_input("window_index: window does not fit the range interval");
  }
  int m = 0;
  for (int s = 1; s < size; ++s) {
    m += l - s + 1;
  }
  return m + start;
}

void RstStatisticInput::validate() const {
  const Eigen::Index n = v.size();
  if (n < 2 || window.rows() != n || training.rows() != n) {
    throw invalid_input("rst statistic: dimension mismatch");
  }
  if (window.cols() < 1) {
    throw invalid_input("rst statistic: empty window");
  }
  if (training.cols() < n) {
    throw invalid_input("rst statistic: need K >= N training snapshots");
  }
}

namespace {

double chol_logdet(const Eigen::LLT<cmat>& llt) {
  double acc = 0.0;
  const auto& l = llt.matrixLLT();
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    acc += std::log(std::real(l(i, i)));
  }
  return 2.0 * acc;
}

struct RstContext {
  const RstStatisticInput* in = nullptr;
  int l = 0;
  int k = 0;
  double logdet_s0 = 0.0;
  cmat s0;
  std::vector<cmat> prefix;  // prefix[i] = sum of z_l z_l† over the first i cells
};

RstContext make_context(const RstStatisticInput& in) {
  in.validate();
  RstContext ctx;
  ctx.in = &in;
  ctx.l = in.window_length();
  ctx.k = in.training_count();
  const Eigen::Index n = in.v.size();

  cmat s = in.training * in.training.adjoint();
  Eigen::LLT<cmat> llt_s(s);
  if (llt_s.info() != Eigen::Success) {
    throw singular_matrix("rst_glr: training Gram matrix is not positive definite");
  }

  ctx.prefix.resize(ctx.l + 1);
  ctx.prefix[0] = cmat::Zero(n, n);
  for (int i = 1; i <= ctx.l; ++i) {
    const cvec& z = in.window.col(i - 1);
    ctx.prefix[i] = ctx.prefix[i - 1] + z * z.adjoint();
  }
  ctx.s0 = ctx.prefix[ctx.l] + s;

  Eigen::LLT<cmat> llt_s0(ctx.s0);
  if (llt_s0.info() != Eigen::Success) {
    throw singular_matrix("rst_glr: full-window Gram matrix is not positive definite");
  }
  ctx.logdet_s0 = chol_logdet(llt_s0);
  return ctx;
}

double glr_for_window(const RstContext& ctx, int start, int size) {
  // S1 drops the candidate window's own cells from S0.
  const cmat occupied = ctx.prefix[start + size - 1] - ctx.prefix[start - 1];
  cmat s1 = ctx.s0 - occupied;
  Eigen::LLT<cmat> llt_s1(s1);
  if (llt_s1.info() != Eigen::Success) {
    throw singular_matrix("rst_glr: leave-window-out Gram matrix is not positive definite");
  }
  const cvec x_v = llt_s1.solve(ctx.in->v);
  const double den = std::real(ctx.in->v.dot(x_v));  // v† S1^{-1} v

  cmat fitted = s1;
  for (int l = start; l < start + size; ++l) {
    const cvec& z = ctx.in->window.col(l - 1);
    const cplx coef = x_v.dot(z) / den;  // (v† S1^{-1} z_l) / (v† S1^{-1} v)
    const cvec r = z - coef * ctx.in->v;
    fitted += r * r.adjoint();
  }
  Eigen::LLT<cmat> llt_fit(fitted);
  if (llt_fit.info() != Eigen::Success) {
    throw singular_matrix("rst_glr: fitted residual matrix is not positive definite");
  }
  return (ctx.l + ctx.k) * (ctx.logdet_s0 - chol_logdet(llt_fit));
}

}  // namespace

double rst_glr(const RstStatisticInput& in, const WindowHypothesis& w) {
  const RstContext ctx = make_context(in);
  if (w.size < 1 || w.start < 1 || w.start + w.size - 1 > ctx.l) {
    throw invalid_input("rst_glr: window hypothesis out of range");
  }
  return glr_for_window(ctx, w.start, w.size);
}

std::vector<double> rst_glr_all(const RstStatisticInput& in) {
  const RstContext ctx = make_context(in);
  const std::vector<WindowHypothesis> windows = enumerate_windows(ctx.l);
  std::vector<double> out(windows.size());
  for (std::size_t i = 0; i < windows.size(); ++i) {
    out[i] = glr_for_window(ctx, windows[i].start, windows[i].size);
  }
  return out;
}

int rst_param_count(int window_size, int n) {
  if (window_size < 1 || n < 2) {
    throw invalid_input("rst_param_count: need window size >= 1 and N >= 2");
  }
  return 2 * window_size + 1 + n * n;
}

std::vector<HypothesisScore> rst_scores(const RstStatisticInput& in, const PenaltyRule& rule) {
  const std::vector<double> lambda = rst_glr_all(in);
  const int l = in.window_length();
  const int k = in.training_count();
  const int n = static_cast<int>(in.v.size());
  const double t_or_k =
      rule.kind == PenaltyKind::BicK ? static_cast<double>(k) : 2.0 * (l + k) * n;
  const std::vector<WindowHypothesis> windows = enumerate_windows(l);
  std::vector<HypothesisScore> scores(windows.size());
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const int p = rst_param_count(windows[i].size, n);
    scores[i] = {windows[i].m, lambda[i], p, penalty(rule, p, t_or_k)};
  }
  return scores;
}

}  // namespace klic
