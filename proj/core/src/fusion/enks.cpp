#include "clogfuse/fusion/enks.hpp"

#include <algorithm>
#include <random>

#include <Eigen/Cholesky>

#include "clogfuse/fusion/isotonic.hpp"
#include "clogfuse/util/error.hpp"
#include "clogfuse/util/parallel.hpp"
#include "clogfuse/util/rng.hpp"

namespace clogfuse::fusion {

namespace {

/// State variable k stands for grid index lo + k. At a cleaning point it is
/// the pre-cleaning value and the grid value is factor * state.
struct WindowState {
  std::size_t lo = 0;
  std::size_t hi = 0;
  std::vector<double> factor;
  std::vector<int> mark;  // cleaning index at this grid point, or -1

  std::size_t size() const { return hi - lo + 1; }
};

WindowState window_state(const sim::Ensemble& ens, const AssimilationWindow& w) {
  const auto& grid = ens.grid;
  WindowState s;
  const std::size_t last = grid.size() - 1;
  const std::size_t after_start = grid.first_at_or_after(w.t_start);
  s.lo = after_start < grid.size() && grid[after_start] == w.t_start
             ? after_start
             : (after_start == 0 ? 0 : after_start - 1);
  s.lo = std::min(s.lo, last);
  s.hi = std::min(grid.first_at_or_after(w.t_end), last);
  s.factor.assign(s.size(), 1.0);
  s.mark.assign(s.size(), -1);
  for (std::size_t c = 0; c < ens.marks.size(); ++c) {
    const std::size_t j = ens.marks[c].index;
    if (j < s.lo || j > s.hi) continue;
    s.factor[j - s.lo] = 1.0 - ens.marks[c].efficiency;
    s.mark[j - s.lo] = static_cast<int>(c);
  }
  return s;
}

}  // namespace

sim::Ensemble enks_window(const sim::Ensemble& ens, const AssimilationWindow& window,
                          const data::Dataset& ds, std::uint64_t seed,
                          const EnksOptions& options) {
  const auto obs = window_observations(window, ds);
  if (obs.empty()) return ens;

  const auto N = static_cast<Eigen::Index>(ens.size());
  if (N < 2) throw ConfigError("enks: needs an ensemble of at least 2 members");
  for (const auto& o : obs) {
    if (!(o.sigma > 0.0))
      throw ConfigError("enks: observation group " + std::to_string(o.group) +
                        " has zero noise; run validate_dataset and give it a positive sigma");
    if (!ens.grid.contains(o.time))
      throw ConfigError("enks: observation at t=" + std::to_string(o.time) + " outside the grid span");
  }

  const WindowState st = window_state(ens, window);
  const auto n = static_cast<Eigen::Index>(st.size());
  const auto m = static_cast<Eigen::Index>(obs.size());

  Eigen::MatrixXd X(n, N);
  for (Eigen::Index k = 0; k < n; ++k) {
    const int c = st.mark[static_cast<std::size_t>(k)];
    X.row(k) = c >= 0 ? ens.pre_cleaning.row(c) : ens.values.row(static_cast<Eigen::Index>(st.lo) + k);
  }

  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m, n);
  Eigen::VectorXd y(m), sigma(m);
  for (Eigen::Index r = 0; r < m; ++r) {
    const auto& o = obs[static_cast<std::size_t>(r)];
    y[r] = o.value;
    sigma[r] = o.sigma;
    if (ens.grid.size() == 1) {
      H(r, 0) = st.factor[0];
      continue;
    }
    const std::size_t j = ens.grid.interval_of(o.time);
    const double w = (o.time - ens.grid[j]) / (ens.grid[j + 1] - ens.grid[j]);
    // Grid points carrying non-zero interpolation weight lie in [lo, hi].
    if (w < 1.0) H(r, static_cast<Eigen::Index>(j - st.lo)) += (1.0 - w) * st.factor[j - st.lo];
    if (w > 0.0) H(r, static_cast<Eigen::Index>(j + 1 - st.lo)) += w * st.factor[j + 1 - st.lo];
  }

  const Eigen::MatrixXd HX = H * X;
  const Eigen::MatrixXd A = X.colwise() - X.rowwise().mean();
  const Eigen::MatrixXd HA = HX.colwise() - HX.rowwise().mean();
  const double denom = static_cast<double>(N - 1);

  Eigen::MatrixXd S = HA * HA.transpose() / denom;
  S.diagonal() += sigma.array().square().matrix();
  Eigen::LLT<Eigen::MatrixXd> llt(S);
  if (llt.info() != Eigen::Success)
    throw NumericalError("enks: innovation covariance is not positive definite");

  Eigen::MatrixXd innovation(m, N);
  parallel_for(static_cast<std::size_t>(N), [&](std::size_t i) {
    auto engine = rng::substream(seed, {rng::tag("enks-perturbation"), window.index, i});
    std::normal_distribution<double> noise(0.0, 1.0);
    const auto col = static_cast<Eigen::Index>(i);
    for (Eigen::Index r = 0; r < m; ++r)
      innovation(r, col) = y[r] + sigma[r] * noise(engine) - HX(r, col);
  });

  // X += C_xh S^-1 (d - HX), with C_xh = A HA^T / (N - 1) formed first so
  // nothing of size N x N is ever built.
  const Eigen::MatrixXd C_xh = A * HA.transpose() / denom;
  X += C_xh * llt.solve(innovation);

  sim::Ensemble out = ens;
  out.provenance = sim::Provenance::enks;
  out.member_inputs.reset();
  for (Eigen::Index k = 0; k < n; ++k) {
    const int c = st.mark[static_cast<std::size_t>(k)];
    const auto j = static_cast<Eigen::Index>(st.lo) + k;
    if (c >= 0) {
      out.pre_cleaning.row(c) = X.row(k);
      out.values.row(j) = st.factor[static_cast<std::size_t>(k)] * X.row(k);
    } else {
      out.values.row(j) = X.row(k);
    }
  }

  if (options.project) {
    parallel_for(static_cast<std::size_t>(N), [&](std::size_t i) {
      const auto col = static_cast<Eigen::Index>(i);
      Eigen::VectorXd v = out.values.col(col);
      Eigen::VectorXd pre = out.pre_cleaning.col(col);
      project_physical(v, pre, out.marks);
      out.values.col(col) = v;
      out.pre_cleaning.col(col) = pre;
    });
  }
  return out;
}

}  // namespace clogfuse::fusion
