#pragma once

#include <cstddef>
#include <memory>
#include <span>

#include <Eigen/Core>

#include "clogfuse/surrogate/vpce.hpp"

namespace clogfuse::surrogate {

/// Split-conformal interval half-widths, calibrated independently per
/// output on absolute residuals (marginal, not simultaneous, coverage).
struct ConformalPredictor {
  std::shared_ptr<const Surrogate> surrogate;
  double alpha = 0.1;
  Eigen::VectorXd radius;  ///< +infinity when the quantile rank exceeds n_cal
  std::size_t n_cal = 0;

  bool bounded() const noexcept { return radius.allFinite(); }
};

/// k = ceil((n_cal + 1)(1 - alpha)), the rank of the calibration residual
/// used as the radius. May exceed n_cal.
std::size_t conformal_rank(std::size_t n_cal, double alpha);

/// y is (n_outputs x n_cal). Throws ConfigError on an empty calibration set,
/// alpha outside (0, 1), or size mismatch.
ConformalPredictor calibrate_conformal(std::shared_ptr<const Surrogate> s,
                                       std::span<const InputVector> xs,
                                       const Eigen::MatrixXd& y, double alpha);

struct PredictionInterval {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;
  bool unbounded = false;
  bool out_of_bounds = false;
};

PredictionInterval predict_interval(const ConformalPredictor& cp, const InputVector& x);

}  // namespace clogfuse::surrogate
