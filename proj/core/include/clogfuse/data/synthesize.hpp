#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "clogfuse/data/observations.hpp"
#include "clogfuse/sim/trajectory.hpp"

namespace clogfuse::data {

/// value_i = clamp(truth(t_i) + eps_i, 0, 1), eps_i ~ N(0, sigma^2) i.i.d.,
/// truth interpolated linearly on its grid. Throws ConfigError for a time
/// outside the grid span or a negative sigma.
ObservationGroup synthesize_observations(const sim::DegradationTrajectory& truth,
                                         std::span<const double> times, double sigma,
                                         const std::string& label, std::uint64_t seed);

/// Sparse accurate inspections plus denser, noisier regression estimates.
struct SyntheticScenario {
  int tve_count_min = 3;
  int tve_count_max = 6;
  double tve_sigma = 0.02;
  int esticol_per_year_min = 2;
  int esticol_per_year_max = 4;
  double esticol_sigma = 0.06;
  double esticol_start = 10.0;  ///< first year with regression estimates
  double observe_until = 35.0;  ///< present time: no observation after it
};

/// TVE points at distinct whole "outage" years in [1, observe_until];
/// ESTICOL points at random offsets within each year from esticol_start.
Dataset synthesize_scenario(const sim::DegradationTrajectory& truth,
                            const SyntheticScenario& scenario, std::uint64_t seed);

}  // namespace clogfuse::data
