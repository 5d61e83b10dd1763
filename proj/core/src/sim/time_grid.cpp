#include "clogfuse/sim/time_grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "clogfuse/util/error.hpp"

namespace clogfuse::sim {

TimeGrid::TimeGrid() {
  static const auto empty = std::make_shared<const std::vector<double>>();
  times_ = empty;
}

TimeGrid::TimeGrid(std::vector<double> times) {
  if (times.empty()) throw ConfigError("time grid: empty");
  if (!std::isfinite(times.front()) || times.front() < 0.0)
    throw ConfigError("time grid: t0 must be finite and >= 0");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || !(times[i] > times[i - 1]))
      throw ConfigError("time grid: times must be strictly increasing (index " +
                        std::to_string(i) + ")");
  }
  times_ = std::make_shared<const std::vector<double>>(std::move(times));
}

TimeGrid TimeGrid::uniform(double t0, double t_end, double step) {
  if (!(step > 0.0) || !std::isfinite(step))
    throw ConfigError("time grid: step must be positive");
  if (!(t_end >= t0)) throw ConfigError("time grid: end before start");
  const auto n = static_cast<std::size_t>(std::floor((t_end - t0) / step + 1e-9)) + 1;

  // Steps like 1/12 are not representable; divide by the integer count per
  // year instead so that whole years land exactly on grid points.
  const double per_unit = 1.0 / step;
  const double per_unit_rounded = std::round(per_unit);
  const bool integral = per_unit_rounded >= 1.0 && std::abs(per_unit - per_unit_rounded) < 1e-9;

  std::vector<double> times(n);
  for (std::size_t i = 0; i < n; ++i) {
    times[i] = integral ? t0 + static_cast<double>(i) / per_unit_rounded
                        : t0 + static_cast<double>(i) * step;
  }
  return TimeGrid(std::move(times));
}

std::size_t TimeGrid::first_at_or_after(double t) const noexcept {
  const auto& v = *times_;
  return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), t) - v.begin());
}

std::size_t TimeGrid::interval_of(double t) const noexcept {
  const auto& v = *times_;
  auto it = std::upper_bound(v.begin(), v.end(), t);
  std::size_t j = it == v.begin() ? 0 : static_cast<std::size_t>(it - v.begin()) - 1;
  return std::min(j, v.size() - 2);
}

}  // namespace clogfuse::sim
