#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "clogfuse/sim/prior.hpp"
#include "clogfuse/sim/trajectory.hpp"

namespace clogfuse::sim {

enum class Provenance { prior, bmu, enks };
std::string_view to_string(Provenance p) noexcept;

/// N trajectories on one grid, stored column-wise (values is T x N).
struct Ensemble {
  TimeGrid grid;
  std::vector<CleaningMark> marks;
  Eigen::MatrixXd values;
  Eigen::MatrixXd pre_cleaning;  ///< marks.size() x N
  std::optional<std::vector<InputVector>> member_inputs;
  Provenance provenance = Provenance::prior;

  std::size_t size() const noexcept { return static_cast<std::size_t>(values.cols()); }
  DegradationTrajectory member(std::size_t i) const;
  Eigen::VectorXd mean() const { return values.rowwise().mean(); }
};

/// Packs trajectories sharing one grid and cleaning marks into an ensemble.
Ensemble make_ensemble(const std::vector<DegradationTrajectory>& members,
                       Provenance provenance);

}  // namespace clogfuse::sim
