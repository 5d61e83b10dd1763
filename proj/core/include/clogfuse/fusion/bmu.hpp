#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "clogfuse/data/observations.hpp"
#include "clogfuse/sim/prior.hpp"
#include "clogfuse/sim/time_grid.hpp"
#include "clogfuse/surrogate/vpce.hpp"

namespace clogfuse::fusion {

using sim::InputVector;

/// Maps input vectors to grid-sampled outputs: (T x n), column per input.
using ForwardModel = std::function<Eigen::MatrixXd(std::span<const InputVector>)>;

struct BmuOptions {
  /// Effective sample size below ess_floor_fraction * n raises a warning.
  double ess_floor_fraction = 0.01;
};

/// Self-normalised importance sample of the input posterior with the prior
/// as proposal, plus an unweighted companion drawn by systematic resampling.
struct WeightedInputSample {
  std::vector<InputVector> inputs;
  Eigen::VectorXd log_weights;  ///< up to an additive constant
  double ess = 0.0;             ///< (sum w)^2 / sum w^2
  std::vector<std::size_t> resampled_indices;
  std::vector<InputVector> resampled;
  std::vector<std::string> warnings;

  Eigen::VectorXd normalized_weights() const;
  Eigen::VectorXd weighted_mean() const;
  Eigen::VectorXd weighted_std() const;
};

/// Gaussian log-likelihood weights with known per-group noise,
///   log w_i = - sum_obs (y_obs - yhat_i(t_obs))^2 / (2 sigma_group^2),
/// with yhat_i interpolated linearly from the forward outputs. Draws
/// n_resample posterior inputs by systematic resampling; identical weights
/// resample to the inputs themselves (when n_resample == n). Throws
/// NumericalError if every weight is -inf (message carries the smallest
/// squared misfit), ConfigError for observations outside the grid.
WeightedInputSample importance_weights(std::vector<InputVector> inputs, const sim::TimeGrid& grid,
                                       const ForwardModel& forward, const data::Dataset& ds,
                                       std::size_t n_resample, std::uint64_t seed,
                                       const BmuOptions& options = {});

/// Draws n prior inputs and weights them through the surrogate, whose
/// outputs must be the values on `grid` and whose bounds must equal the
/// prior's.
WeightedInputSample bmu_posterior(const sim::PriorSpec& prior, const surrogate::Surrogate& s,
                                  const sim::TimeGrid& grid, const data::Dataset& ds,
                                  std::size_t n, std::uint64_t seed,
                                  const BmuOptions& options = {});

/// Systematic resampling of normalised weights; u0 drawn from the seed.
std::vector<std::size_t> systematic_resample(const Eigen::VectorXd& weights, std::size_t m,
                                             std::uint64_t seed);

}  // namespace clogfuse::fusion
