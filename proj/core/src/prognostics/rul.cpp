#include "clogfuse/prognostics/rul.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "clogfuse/util/error.hpp"

namespace clogfuse::prognostics {

void RulQuery::validate(const sim::TimeGrid& grid) const {
  if (!(threshold > 0.0 && threshold < 1.0)) throw ConfigError("rul: threshold must lie in (0, 1)");
  if (!grid.contains(t_start)) {
    std::ostringstream msg;
    msg << "rul: t_start=" << t_start << " outside grid span [" << grid.front() << ", " << grid.back() << "]";
    throw ConfigError(msg.str());
  }
  if (!(horizon_end >= t_start)) throw ConfigError("rul: horizon end precedes t_start");
}

std::optional<double> first_passage(const sim::TimeGrid& grid,
                                    const Eigen::Ref<const Eigen::VectorXd>& values,
                                    const RulQuery& q) {
  q.validate(grid);
  for (std::size_t j = grid.first_at_or_after(q.t_start); j < grid.size(); ++j) {
    if (grid[j] > q.horizon_end) break;
    if (values[static_cast<Eigen::Index>(j)] >= q.threshold) return grid[j] - q.t_start;
  }
  return std::nullopt;
}

std::optional<double> first_passage(const sim::DegradationTrajectory& traj, const RulQuery& q) {
  return first_passage(traj.grid, traj.values, q);
}

double RulDistribution::cdf(double d) const noexcept {
  if (n_total == 0) return 0.0;
  const auto hits = std::count_if(samples.begin(), samples.end(), [d](double s) { return s <= d; });
  return static_cast<double>(hits) / static_cast<double>(n_total);
}

RulDistribution rul_distribution(const sim::Ensemble& ens, const RulQuery& q) {
  if (ens.size() == 0) throw ConfigError("rul: empty ensemble");
  q.validate(ens.grid);
  RulDistribution rd;
  rd.query = q;
  rd.n_total = ens.size();
  rd.per_member.reserve(rd.n_total);
  for (std::size_t i = 0; i < rd.n_total; ++i) {
    auto d = first_passage(ens.grid, ens.values.col(static_cast<Eigen::Index>(i)), q);
    if (d)
      rd.samples.push_back(*d);
    else
      ++rd.censored_count;
    rd.per_member.push_back(d);
  }
  return rd;
}

RulSummary rul_summary(const RulDistribution& rd, std::span<const double> levels) {
  RulSummary s;
  s.n_total = rd.n_total;
  s.n_crossed = rd.samples.size();
  s.censored_fraction =
      rd.n_total ? static_cast<double>(rd.censored_count) / static_cast<double>(rd.n_total) : 0.0;

  if (rd.samples.empty()) {
    s.mean = s.std = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  const double n = static_cast<double>(rd.samples.size());
  double sum = 0.0;
  for (double v : rd.samples) sum += v;
  s.mean = sum / n;
  double ss = 0.0;
  for (double v : rd.samples) ss += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(ss / n);

  std::vector<double> sorted = rd.samples;
  std::sort(sorted.begin(), sorted.end());
  for (double q : levels) {
    if (!(q >= 0.0 && q <= 1.0)) throw ConfigError("rul: quantile level outside [0, 1]");
    const auto k = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(q * static_cast<double>(rd.n_total) - 1e-9)));
    QuantileEntry e{q, std::nullopt};
    if (k <= sorted.size()) e.value = sorted[k - 1];
    s.quantiles.push_back(e);
  }
  return s;
}

}  // namespace clogfuse::prognostics
