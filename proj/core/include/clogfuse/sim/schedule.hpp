#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "clogfuse/sim/time_grid.hpp"

namespace clogfuse::sim {

enum class CleaningKind { preventive, curative };
enum class Regime { chi1, chi2 };

std::string_view to_string(CleaningKind k) noexcept;
std::string_view to_string(Regime r) noexcept;
CleaningKind cleaning_kind_from_string(std::string_view s);
Regime regime_from_string(std::string_view s);

struct Cleaning {
  double time = 0.0;
  double efficiency = 0.0;  ///< fraction of deposit removed, in [0, 1]
  CleaningKind kind = CleaningKind::preventive;
};

struct RegimeSegment {
  double start = 0.0;
  double end = 0.0;
  Regime regime = Regime::chi1;
  double rate_multiplier = 1.0;
};

/// A cleaning after snapping to the grid: applied at grid index `index`.
struct CleaningMark {
  std::size_t index = 0;
  double efficiency = 0.0;

  friend bool operator==(const CleaningMark&, const CleaningMark&) = default;
};

/// Chemical cleanings and secondary-fluid conditioning regimes. An empty
/// regime list means a single chi1 segment with multiplier 1 over the grid.
struct MaintenanceSchedule {
  std::vector<Cleaning> cleanings;
  std::vector<RegimeSegment> regimes;

  /// Throws ConfigError when cleanings are not strictly increasing, have
  /// efficiency outside [0,1], fall outside the grid, or two of them snap to
  /// the same grid point; or when regimes overlap, leave gaps, fail to
  /// cover the grid, or have a non-positive multiplier.
  void validate(const TimeGrid& grid) const;

  /// Cleanings snapped to the first grid point at or after their time.
  std::vector<CleaningMark> marks(const TimeGrid& grid) const;

  /// Active segment at time t; the last segment is closed on the right.
  /// Requires a validated, non-empty regime list.
  const RegimeSegment& segment_at(double t) const;

  /// Times in (t0, t1) where the active regime changes.
  std::vector<double> regime_breaks(double t0, double t1) const;
};

/// Monthly grid over 40 years.
TimeGrid default_grid();

/// Two cleanings (preventive at 15 y, curative at 28 y) and a chi1 -> chi2
/// conditioning change at 20 y.
MaintenanceSchedule default_schedule();

}  // namespace clogfuse::sim
