#pragma once

#include <cstddef>
#include <vector>

#include "clogfuse/data/observations.hpp"
#include "clogfuse/fusion/observation_operator.hpp"
#include "clogfuse/sim/schedule.hpp"
#include "clogfuse/sim/time_grid.hpp"

namespace clogfuse::fusion {

/// A smoothing window. Observations with t_start < t <= t_end belong to it;
/// the first window is also closed on the left. A time on a shared boundary
/// therefore belongs to the earlier window.
struct AssimilationWindow {
  double t_start = 0.0;
  double t_end = 0.0;
  std::size_t index = 0;

  bool contains(double t) const noexcept {
    return t <= t_end && (t > t_start || (index == 0 && t == t_start));
  }
};

/// Consecutive windows between sorted boundary times (at least two).
std::vector<AssimilationWindow> windows_from_boundaries(const std::vector<double>& boundaries);

/// One window per inter-cleaning interval, from grid start to grid end.
std::vector<AssimilationWindow> windows_at_cleanings(const sim::MaintenanceSchedule& schedule,
                                                     const sim::TimeGrid& grid);

/// Throws ConfigError unless windows are ordered, contiguous, indexed
/// 0..n-1 and cover [span_start, span_end].
void validate_windows(const std::vector<AssimilationWindow>& windows, double span_start,
                      double span_end);

/// Observations (in dataset order) that fall inside the window.
std::vector<FlatObservation> window_observations(const AssimilationWindow& w,
                                                 const data::Dataset& ds);

}  // namespace clogfuse::fusion
