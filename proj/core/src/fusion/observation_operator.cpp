#include "clogfuse/fusion/observation_operator.hpp"

#include <cmath>
#include <limits>

#include "clogfuse/sim/trajectory.hpp"

namespace clogfuse::fusion {

std::vector<FlatObservation> flatten(const data::Dataset& ds) {
  std::vector<FlatObservation> out;
  out.reserve(ds.total_observations());
  for (std::size_t g = 0; g < ds.groups.size(); ++g) {
    const auto& group = ds.groups[g];
    for (std::size_t i = 0; i < group.size(); ++i)
      out.push_back({group.times[i], group.values[i], group.sigma, g, i});
  }
  return out;
}

Eigen::MatrixXd observe(const sim::TimeGrid& grid, const Eigen::MatrixXd& values,
                        const std::vector<FlatObservation>& obs) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(obs.size()), values.cols());
  for (Eigen::Index i = 0; i < values.cols(); ++i)
    for (std::size_t k = 0; k < obs.size(); ++k)
      out(static_cast<Eigen::Index>(k), i) = sim::interpolate(grid, values.col(i), obs[k].time);
  return out;
}

double mean_rmse(const sim::Ensemble& ens, const std::vector<FlatObservation>& obs,
                 const Eigen::VectorXd& reference) {
  if (obs.empty()) return std::numeric_limits<double>::quiet_NaN();
  const Eigen::VectorXd mean = ens.mean();
  double ss = 0.0;
  for (std::size_t k = 0; k < obs.size(); ++k) {
    const double r = sim::interpolate(ens.grid, mean, obs[k].time) - reference[static_cast<Eigen::Index>(k)];
    ss += r * r;
  }
  return std::sqrt(ss / static_cast<double>(obs.size()));
}

}  // namespace clogfuse::fusion
