#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace clogfuse::sim {

/// Strictly increasing simulation times in years, t0 >= 0. Copies share the
/// underlying storage, so ensembles and trajectories can hold a grid by value.
class TimeGrid {
 public:
  /// Empty placeholder; only size() and assignment are meaningful.
  TimeGrid();
  explicit TimeGrid(std::vector<double> times);

  /// t0, t0 + step, ... up to the last point not beyond t_end (within a
  /// 1e-9 step tolerance, so a 40-year monthly grid ends exactly at 40).
  static TimeGrid uniform(double t0, double t_end, double step);

  std::size_t size() const noexcept { return times_->size(); }
  double operator[](std::size_t i) const noexcept { return (*times_)[i]; }
  double front() const noexcept { return times_->front(); }
  double back() const noexcept { return times_->back(); }
  std::span<const double> times() const noexcept { return *times_; }

  bool contains(double t) const noexcept {
    return size() > 0 && t >= front() && t <= back();
  }

  /// Index of the first grid time >= t, or size() if there is none.
  std::size_t first_at_or_after(double t) const noexcept;

  /// Index j with times[j] <= t < times[j+1]; clamps to [0, size()-2].
  /// Requires size() >= 2.
  std::size_t interval_of(double t) const noexcept;

  friend bool operator==(const TimeGrid& a, const TimeGrid& b) noexcept {
    return a.times_ == b.times_ || *a.times_ == *b.times_;
  }

 private:
  std::shared_ptr<const std::vector<double>> times_;
};

}  // namespace clogfuse::sim
