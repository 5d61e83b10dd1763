#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "clogfuse/sim/schedule.hpp"
#include "clogfuse/sim/time_grid.hpp"

namespace clogfuse::sim {

/// Clogging fraction tau_c on a grid.
///
/// values[j] is the state at grid time j after any cleaning applied there.
/// For each cleaning mark c, pre_cleaning[c] holds the state just before the
/// drop, so values[marks[c].index] == (1 - efficiency) * pre_cleaning[c].
struct DegradationTrajectory {
  TimeGrid grid;
  Eigen::VectorXd values;
  std::vector<CleaningMark> marks;
  Eigen::VectorXd pre_cleaning;

  /// Linear interpolation on the grid; t must lie within the grid span.
  double value_at(double t) const;
};

/// Linear interpolation of grid-sampled values at t (within the span).
double interpolate(const TimeGrid& grid, const Eigen::Ref<const Eigen::VectorXd>& values,
                   double t);

/// Human-readable list of violated trajectory invariants: bounds [0,1],
/// non-decreasing between cleanings (including the pre-cleaning value that
/// closes each segment), and the multiplicative drop at each cleaning.
/// `tol` absorbs rounding in the drop identity and monotonicity checks.
std::vector<std::string> invariant_violations(const DegradationTrajectory& traj,
                                              double tol = 1e-12);

}  // namespace clogfuse::sim
