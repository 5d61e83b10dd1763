#include "clogfuse/fusion/windows.hpp"

#include <cmath>
#include <string>

#include "clogfuse/util/error.hpp"

namespace clogfuse::fusion {

std::vector<AssimilationWindow> windows_from_boundaries(const std::vector<double>& boundaries) {
  if (boundaries.size() < 2) throw ConfigError("windows: need at least two boundaries");
  std::vector<AssimilationWindow> out;
  for (std::size_t k = 0; k + 1 < boundaries.size(); ++k) {
    if (!(boundaries[k + 1] > boundaries[k]))
      throw ConfigError("windows: boundaries must be strictly increasing");
    out.push_back({boundaries[k], boundaries[k + 1], k});
  }
  return out;
}

std::vector<AssimilationWindow> windows_at_cleanings(const sim::MaintenanceSchedule& schedule,
                                                     const sim::TimeGrid& grid) {
  std::vector<double> b{grid.front()};
  for (const auto& cl : schedule.cleanings)
    if (cl.time > b.back() && cl.time < grid.back()) b.push_back(cl.time);
  if (grid.back() > b.back()) b.push_back(grid.back());
  if (b.size() < 2) b.push_back(b.back() + 1.0);  // single-point grid
  return windows_from_boundaries(b);
}

void validate_windows(const std::vector<AssimilationWindow>& windows, double span_start,
                      double span_end) {
  if (windows.empty()) throw ConfigError("windows: empty window list");
  for (std::size_t k = 0; k < windows.size(); ++k) {
    const auto& w = windows[k];
    if (w.index != k) throw ConfigError("windows: window " + std::to_string(k) + " has index " + std::to_string(w.index));
    if (!(w.t_end > w.t_start)) throw ConfigError("windows: window " + std::to_string(k) + " is empty");
    if (k > 0 && w.t_start != windows[k - 1].t_end)
      throw ConfigError("windows: window " + std::to_string(k) + " does not start where the previous ends");
  }
  if (windows.front().t_start > span_start || windows.back().t_end < span_end)
    throw ConfigError("windows: do not cover the assimilation span");
}

std::vector<FlatObservation> window_observations(const AssimilationWindow& w,
                                                 const data::Dataset& ds) {
  std::vector<FlatObservation> out;
  for (const auto& o : flatten(ds))
    if (w.contains(o.time)) out.push_back(o);
  return out;
}

}  // namespace clogfuse::fusion
