#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "clogfuse/sim/ensemble.hpp"
#include "clogfuse/sim/trajectory.hpp"

namespace clogfuse::prognostics {

/// Threshold crossing query: time to reach `threshold` counted from
/// `t_start` (typically the last cleaning), looking no further than
/// `horizon_end` (clipped to the grid end).
struct RulQuery {
  double threshold = 0.5;
  double t_start = 0.0;
  double horizon_end = 0.0;

  /// Throws ConfigError unless 0 < threshold < 1, t_start lies within the
  /// grid span and horizon_end >= t_start.
  void validate(const sim::TimeGrid& grid) const;
};

/// First grid time t* >= t_start with tau(t*) >= threshold, as t* - t_start;
/// nullopt (censored) if none before the horizon. No sub-step interpolation.
std::optional<double> first_passage(const sim::TimeGrid& grid,
                                    const Eigen::Ref<const Eigen::VectorXd>& values,
                                    const RulQuery& q);
std::optional<double> first_passage(const sim::DegradationTrajectory& traj, const RulQuery& q);

/// Empirical first-passage sample over an ensemble.
struct RulDistribution {
  std::vector<double> samples;                  ///< crossed members, member order
  std::vector<std::optional<double>> per_member;
  std::size_t censored_count = 0;
  std::size_t n_total = 0;
  RulQuery query;

  /// Fraction of all members with a duration <= d (censored never count).
  double cdf(double d) const noexcept;
};

RulDistribution rul_distribution(const sim::Ensemble& ens, const RulQuery& q);

struct QuantileEntry {
  double level = 0.0;
  std::optional<double> value;  ///< nullopt: beyond the horizon (censored)
};

struct RulSummary {
  double mean = 0.0;  ///< over crossed members; NaN if none crossed
  double std = 0.0;   ///< population standard deviation; NaN if none crossed
  std::vector<QuantileEntry> quantiles;
  double censored_fraction = 0.0;
  std::size_t n_total = 0;
  std::size_t n_crossed = 0;
};

/// Lower empirical quantiles over all members with censored members ranked
/// last: level q picks the k-th smallest duration, k = max(1, ceil(q n)),
/// and is reported as censored when k exceeds the number of crossings.
/// With every member censored, no quantiles are listed.
RulSummary rul_summary(const RulDistribution& rd, std::span<const double> levels);

}  // namespace clogfuse::prognostics
