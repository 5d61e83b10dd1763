#include "clogfuse/surrogate/q2.hpp"

#include <limits>

#include "clogfuse/util/error.hpp"

namespace clogfuse::surrogate {

Q2Report q2_from_predictions(const Eigen::MatrixXd& y, const Eigen::MatrixXd& yhat) {
  if (y.rows() != yhat.rows() || y.cols() != yhat.cols())
    throw ConfigError("q2: test outputs and predictions differ in shape");
  if (y.cols() < 2) throw ConfigError("q2: needs at least 2 test points");

  Q2Report r;
  r.per_time.resize(y.rows());
  r.degenerate.assign(static_cast<std::size_t>(y.rows()), false);
  double sum = 0.0;
  std::size_t counted = 0;
  for (Eigen::Index t = 0; t < y.rows(); ++t) {
    // Constant test outputs are checked directly: the rounded mean of equal
    // values can differ from them, leaving a spurious tiny variance.
    const bool constant = y.row(t).maxCoeff() == y.row(t).minCoeff();
    const double mean = y.row(t).mean();
    const double ss_tot = (y.row(t).array() - mean).square().sum();
    const double ss_res = (y.row(t) - yhat.row(t)).squaredNorm();
    if (constant || ss_tot == 0.0) {
      r.per_time[t] = std::numeric_limits<double>::quiet_NaN();
      r.degenerate[static_cast<std::size_t>(t)] = true;
      ++r.n_degenerate;
      continue;
    }
    r.per_time[t] = 1.0 - ss_res / ss_tot;
    sum += r.per_time[t];
    ++counted;
  }
  r.mean_q2 = counted ? sum / static_cast<double>(counted)
                      : std::numeric_limits<double>::quiet_NaN();
  return r;
}

Q2Report q2(const Surrogate& s, std::span<const InputVector> xs, const Eigen::MatrixXd& y) {
  if (static_cast<Eigen::Index>(xs.size()) != y.cols())
    throw ConfigError("q2: " + std::to_string(xs.size()) + " test inputs but " +
                      std::to_string(y.cols()) + " test outputs");
  return q2_from_predictions(y, predict_many(s, xs));
}

}  // namespace clogfuse::surrogate
