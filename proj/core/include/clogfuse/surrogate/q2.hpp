#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "clogfuse/surrogate/vpce.hpp"

namespace clogfuse::surrogate {

/// Predictivity coefficient per output:
///   Q2(t) = 1 - sum_i (y_i(t) - yhat_i(t))^2 / sum_i (y_i(t) - ybar(t))^2.
/// Where the test outputs have zero variance the value is NaN, the output is
/// flagged degenerate and excluded from mean_q2.
struct Q2Report {
  Eigen::VectorXd per_time;
  std::vector<bool> degenerate;
  double mean_q2 = 0.0;  ///< NaN when every output is degenerate
  std::size_t n_degenerate = 0;
};

/// y and yhat are (n_outputs x n_test). Requires n_test >= 2.
Q2Report q2_from_predictions(const Eigen::MatrixXd& y, const Eigen::MatrixXd& yhat);

/// The test set must be disjoint from the design; that is not checked here.
Q2Report q2(const Surrogate& s, std::span<const InputVector> xs, const Eigen::MatrixXd& y);

}  // namespace clogfuse::surrogate
