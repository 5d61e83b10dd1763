#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "clogfuse/data/observations.hpp"
#include "clogfuse/sim/ensemble.hpp"

namespace clogfuse::fusion {

/// One observation with its group's noise level, in dataset order.
struct FlatObservation {
  double time = 0.0;
  double value = 0.0;
  double sigma = 0.0;
  std::size_t group = 0;
  std::size_t index = 0;
};

std::vector<FlatObservation> flatten(const data::Dataset& ds);

/// Linear interpolation of every column of `values` (T x N) at each
/// observation time; result is (n_obs x N).
Eigen::MatrixXd observe(const sim::TimeGrid& grid, const Eigen::MatrixXd& values,
                        const std::vector<FlatObservation>& obs);

/// Root-mean-square difference between the ensemble mean (interpolated at
/// observation times) and `reference` values at those times. NaN when
/// there are no observations.
double mean_rmse(const sim::Ensemble& ens, const std::vector<FlatObservation>& obs,
                 const Eigen::VectorXd& reference);

}  // namespace clogfuse::fusion
