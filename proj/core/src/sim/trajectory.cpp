#include "clogfuse/sim/trajectory.hpp"

#include <cmath>
#include <sstream>

#include "clogfuse/util/error.hpp"

namespace clogfuse::sim {

double interpolate(const TimeGrid& grid, const Eigen::Ref<const Eigen::VectorXd>& values,
                   double t) {
  if (!grid.contains(t)) {
    std::ostringstream msg;
    msg << "interpolation time " << t << " outside grid span [" << grid.front() << ", "
        << grid.back() << "]";
    throw ConfigError(msg.str());
  }
  if (grid.size() == 1) return values[0];
  const std::size_t j = grid.interval_of(t);
  const double t0 = grid[j];
  const double t1 = grid[j + 1];
  const double w = (t - t0) / (t1 - t0);
  const auto jj = static_cast<Eigen::Index>(j);
  if (w == 0.0) return values[jj];
  if (w == 1.0) return values[jj + 1];
  return (1.0 - w) * values[jj] + w * values[jj + 1];
}

double DegradationTrajectory::value_at(double t) const { return interpolate(grid, values, t); }

std::vector<std::string> invariant_violations(const DegradationTrajectory& traj, double tol) {
  std::vector<std::string> out;
  auto report = [&out](const std::string& what) { out.push_back(what); };

  const auto T = static_cast<Eigen::Index>(traj.grid.size());
  if (traj.values.size() != T) {
    report("value count differs from grid size");
    return out;
  }
  if (traj.pre_cleaning.size() != static_cast<Eigen::Index>(traj.marks.size())) {
    report("pre-cleaning count differs from cleaning count");
    return out;
  }

  for (Eigen::Index j = 0; j < T; ++j) {
    const double v = traj.values[j];
    if (!(v >= 0.0 && v <= 1.0))
      report("value " + std::to_string(v) + " outside [0,1] at t=" +
             std::to_string(traj.grid[static_cast<std::size_t>(j)]));
  }

  std::size_t seg_begin = 0;
  for (std::size_t c = 0; c <= traj.marks.size(); ++c) {
    const bool closed = c < traj.marks.size();
    const std::size_t seg_end = closed ? traj.marks[c].index : traj.grid.size();
    for (std::size_t j = seg_begin + 1; j < seg_end; ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      if (traj.values[jj] < traj.values[jj - 1] - tol)
        report("decrease between cleanings at t=" + std::to_string(traj.grid[j]));
    }
    if (closed) {
      const double pre = traj.pre_cleaning[static_cast<Eigen::Index>(c)];
      const double post = traj.values[static_cast<Eigen::Index>(seg_end)];
      const double eff = traj.marks[c].efficiency;
      if (!(pre >= 0.0 && pre <= 1.0))
        report("pre-cleaning value outside [0,1] at cleaning " + std::to_string(c));
      if (seg_end > seg_begin &&
          pre < traj.values[static_cast<Eigen::Index>(seg_end - 1)] - tol)
        report("pre-cleaning value below preceding value at cleaning " + std::to_string(c));
      if (std::abs(post - (1.0 - eff) * pre) > tol)
        report("cleaning drop identity violated at cleaning " + std::to_string(c));
      seg_begin = seg_end;
    }
  }
  return out;
}

}  // namespace clogfuse::sim
