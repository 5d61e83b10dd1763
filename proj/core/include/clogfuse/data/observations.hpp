#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace clogfuse::data {

enum class GroupKind { tve, esticol, custom };

/// "TVE" and "ESTICOL" are recognised; any other label is a custom group.
GroupKind kind_of(std::string_view label) noexcept;

/// Timestamped clogging measurements sharing one known noise level.
struct ObservationGroup {
  std::string label;
  std::vector<double> times;   ///< years, strictly increasing
  std::vector<double> values;  ///< clogging fraction in [0, 1]
  double sigma = 0.0;          ///< noise standard deviation, fraction units

  std::size_t size() const noexcept { return times.size(); }
  GroupKind kind() const noexcept { return kind_of(label); }

  /// Throws DataError on a broken invariant: empty or comma-bearing label,
  /// length mismatch, non-increasing or non-finite times, values outside
  /// [0,1], negative or non-finite sigma.
  void validate() const;
};

/// Heterogeneous observation groups; sizes may differ between groups.
struct Dataset {
  std::vector<ObservationGroup> groups;

  std::size_t total_observations() const noexcept;
  bool empty() const noexcept { return total_observations() == 0; }

  /// Observations with time <= t, group structure preserved (groups may end
  /// up empty).
  Dataset up_to(double t) const;
};

}  // namespace clogfuse::data
