#include "clogfuse/sim/schedule.hpp"

#include <cmath>
#include <string>

#include "clogfuse/util/error.hpp"

namespace clogfuse::sim {

std::string_view to_string(CleaningKind k) noexcept {
  return k == CleaningKind::preventive ? "preventive" : "curative";
}

std::string_view to_string(Regime r) noexcept { return r == Regime::chi1 ? "chi1" : "chi2"; }

CleaningKind cleaning_kind_from_string(std::string_view s) {
  if (s == "preventive") return CleaningKind::preventive;
  if (s == "curative") return CleaningKind::curative;
  throw ConfigError("unknown cleaning kind '" + std::string(s) + "'");
}

Regime regime_from_string(std::string_view s) {
  if (s == "chi1") return Regime::chi1;
  if (s == "chi2") return Regime::chi2;
  throw ConfigError("unknown regime '" + std::string(s) + "'");
}

void MaintenanceSchedule::validate(const TimeGrid& grid) const {
  for (std::size_t c = 0; c < cleanings.size(); ++c) {
    const auto& cl = cleanings[c];
    const std::string where = "cleaning " + std::to_string(c);
    if (!std::isfinite(cl.time) || !grid.contains(cl.time))
      throw ConfigError(where + ": time " + std::to_string(cl.time) + " outside grid span [" +
                        std::to_string(grid.front()) + ", " + std::to_string(grid.back()) + "]");
    if (!(cl.efficiency >= 0.0 && cl.efficiency <= 1.0))
      throw ConfigError(where + ": efficiency must lie in [0, 1]");
    if (c > 0 && !(cl.time > cleanings[c - 1].time))
      throw ConfigError(where + ": cleaning times must be strictly increasing");
    if (c > 0 && grid.first_at_or_after(cl.time) == grid.first_at_or_after(cleanings[c - 1].time))
      throw ConfigError(where + ": snaps to the same grid point as the previous cleaning");
  }

  if (regimes.empty()) return;
  for (std::size_t r = 0; r < regimes.size(); ++r) {
    const auto& seg = regimes[r];
    const std::string where = "regime segment " + std::to_string(r);
    if (!(seg.end > seg.start)) throw ConfigError(where + ": end must exceed start");
    if (!(seg.rate_multiplier > 0.0) || !std::isfinite(seg.rate_multiplier))
      throw ConfigError(where + ": rate multiplier must be positive");
    if (r > 0 && seg.start != regimes[r - 1].end)
      throw ConfigError(where + ": segments must be contiguous and non-overlapping");
  }
  if (regimes.front().start > grid.front() || regimes.back().end < grid.back())
    throw ConfigError("regime segments do not cover the grid span");
}

std::vector<CleaningMark> MaintenanceSchedule::marks(const TimeGrid& grid) const {
  std::vector<CleaningMark> out;
  out.reserve(cleanings.size());
  for (const auto& cl : cleanings) out.push_back({grid.first_at_or_after(cl.time), cl.efficiency});
  return out;
}

const RegimeSegment& MaintenanceSchedule::segment_at(double t) const {
  for (std::size_t r = 0; r + 1 < regimes.size(); ++r)
    if (t < regimes[r].end) return regimes[r];
  return regimes.back();
}

std::vector<double> MaintenanceSchedule::regime_breaks(double t0, double t1) const {
  std::vector<double> out;
  for (std::size_t r = 0; r + 1 < regimes.size(); ++r) {
    const double b = regimes[r].end;
    if (b > t0 && b < t1) out.push_back(b);
  }
  return out;
}

TimeGrid default_grid() { return TimeGrid::uniform(0.0, 40.0, 1.0 / 12.0); }

MaintenanceSchedule default_schedule() {
  MaintenanceSchedule s;
  s.cleanings = {{15.0, 0.5, CleaningKind::preventive}, {28.0, 0.7, CleaningKind::curative}};
  s.regimes = {{0.0, 20.0, Regime::chi1, 1.0}, {20.0, 40.0, Regime::chi2, 1.0}};
  return s;
}

}  // namespace clogfuse::sim
