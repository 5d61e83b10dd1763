#include "clogfuse/data/synthesize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "clogfuse/util/error.hpp"
#include "clogfuse/util/rng.hpp"

namespace clogfuse::data {

ObservationGroup synthesize_observations(const sim::DegradationTrajectory& truth,
                                         std::span<const double> times, double sigma,
                                         const std::string& label, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw ConfigError("synthesize_observations: sigma must be >= 0");
  ObservationGroup g{label, {times.begin(), times.end()}, {}, sigma};
  g.values.reserve(times.size());
  auto engine = rng::substream(seed, {rng::tag("observation-noise"), rng::tag(label)});
  std::normal_distribution<double> noise(0.0, 1.0);
  for (double t : times) {
    if (!truth.grid.contains(t))
      throw ConfigError("synthesize_observations: time " + std::to_string(t) +
                        " outside the truth grid span");
    const double eps = sigma > 0.0 ? sigma * noise(engine) : 0.0;
    g.values.push_back(std::clamp(truth.value_at(t) + eps, 0.0, 1.0));
  }
  return g;
}

Dataset synthesize_scenario(const sim::DegradationTrajectory& truth,
                            const SyntheticScenario& sc, std::uint64_t seed) {
  if (sc.tve_count_min < 0 || sc.tve_count_max < sc.tve_count_min ||
      sc.esticol_per_year_min < 0 || sc.esticol_per_year_max < sc.esticol_per_year_min)
    throw ConfigError("synthetic scenario: inconsistent count ranges");
  const double until = std::min(sc.observe_until, truth.grid.back());

  auto engine = rng::substream(seed, {rng::tag("scenario-times")});

  std::vector<double> outage_years;
  for (int y = std::max(1, static_cast<int>(std::ceil(truth.grid.front()))); y <= until; ++y)
    outage_years.push_back(y);
  std::uniform_int_distribution<int> tve_count(sc.tve_count_min, sc.tve_count_max);
  const auto n_tve = std::min<std::size_t>(static_cast<std::size_t>(tve_count(engine)), outage_years.size());
  std::vector<double> tve_times;
  std::sample(outage_years.begin(), outage_years.end(), std::back_inserter(tve_times), n_tve, engine);
  std::sort(tve_times.begin(), tve_times.end());

  std::vector<double> est_times;
  std::uniform_int_distribution<int> per_year(sc.esticol_per_year_min, sc.esticol_per_year_max);
  std::uniform_real_distribution<double> offset(0.0, 1.0);
  for (double y = std::ceil(std::max(sc.esticol_start, truth.grid.front())); y < until; y += 1.0) {
    const int k = per_year(engine);
    std::vector<double> year;
    for (int i = 0; i < k; ++i) {
      const double t = y + offset(engine);
      if (t <= until) year.push_back(t);
    }
    std::sort(year.begin(), year.end());
    year.erase(std::unique(year.begin(), year.end()), year.end());
    est_times.insert(est_times.end(), year.begin(), year.end());
  }

  Dataset ds;
  ds.groups.push_back(synthesize_observations(truth, tve_times, sc.tve_sigma, "TVE", seed));
  ds.groups.push_back(synthesize_observations(truth, est_times, sc.esticol_sigma, "ESTICOL", seed));
  return ds;
}

}  // namespace clogfuse::data
