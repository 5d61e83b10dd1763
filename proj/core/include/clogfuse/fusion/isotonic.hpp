#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "clogfuse/sim/schedule.hpp"

namespace clogfuse::fusion {

/// Least-squares non-decreasing fit with equal weights (pool adjacent
/// violators), in place.
void pool_adjacent_violators(std::span<double> y);

/// Restores trajectory invariants after a linear update: each segment
/// between cleanings (closed by the pre-cleaning value) is replaced by its
/// isotonic fit clipped to [segment start value, 1] (the first segment to
/// [0, 1]), and every post-cleaning value is reset to
/// (1 - efficiency) * pre-cleaning value.
void project_physical(Eigen::Ref<Eigen::VectorXd> values, Eigen::Ref<Eigen::VectorXd> pre_cleaning,
                      const std::vector<sim::CleaningMark>& marks);

}  // namespace clogfuse::fusion
