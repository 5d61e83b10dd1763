#include "clogfuse/sim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "clogfuse/util/error.hpp"
#include "clogfuse/util/parallel.hpp"

namespace clogfuse::sim {

StandInParameters StandInParameters::from_inputs(const InputVector& x) {
  if (x.size() < 3)
    throw ConfigError("stand-in model needs at least 3 inputs (rate, exponent, initial)");
  StandInParameters p;
  p.rate = x[0];
  p.exponent = x[1];
  p.initial = x[2];
  if (x.size() > 3) p.chi1_multiplier = x[3];
  if (x.size() > 4) p.chi2_multiplier = x[4];
  return p;
}

namespace {

void check_parameters(const StandInParameters& p) {
  if (!(p.rate >= 0.0) || !std::isfinite(p.rate)) throw ConfigError("rate k must be >= 0");
  if (!(p.exponent >= 1.0) || !std::isfinite(p.exponent))
    throw ConfigError("saturation exponent a must be >= 1");
  if (!(p.initial >= 0.0 && p.initial <= 1.0))
    throw ConfigError("initial clogging tau0 must lie in [0, 1]");
  if (!(p.chi1_multiplier > 0.0) || !(p.chi2_multiplier > 0.0))
    throw ConfigError("regime multipliers must be positive");
}

[[noreturn]] void non_finite(double t) {
  std::ostringstream msg;
  msg << "stand-in model produced a non-finite state at t=" << t;
  throw NumericalError(msg.str());
}

struct Rhs {
  double scale;  // k * m, constant over a sub-step
  double exponent;
  double operator()(double tau) const {
    const double gap = std::max(0.0, 1.0 - tau);
    return scale * (exponent == 1.0 ? gap : std::pow(gap, exponent));
  }
};

double rk4_step(const Rhs& f, double tau, double h) {
  const double k1 = f(tau);
  const double k2 = f(tau + 0.5 * h * k1);
  const double k3 = f(tau + 0.5 * h * k2);
  const double k4 = f(tau + h * k3);
  return tau + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

DegradationTrajectory simulate_trajectory(const InputVector& x,
                                          const MaintenanceSchedule& schedule,
                                          const TimeGrid& grid,
                                          const SimulatorOptions& options) {
  const auto p = StandInParameters::from_inputs(x);
  check_parameters(p);
  schedule.validate(grid);
  if (!(options.max_substep > 0.0)) throw ConfigError("max_substep must be positive");

  auto multiplier = [&](double t) {
    if (schedule.regimes.empty()) return p.chi1_multiplier;
    const auto& seg = schedule.segment_at(t);
    return seg.rate_multiplier *
           (seg.regime == Regime::chi1 ? p.chi1_multiplier : p.chi2_multiplier);
  };

  DegradationTrajectory traj;
  traj.grid = grid;
  traj.marks = schedule.marks(grid);
  traj.values.resize(static_cast<Eigen::Index>(grid.size()));
  traj.pre_cleaning.resize(static_cast<Eigen::Index>(traj.marks.size()));

  std::size_t next_mark = 0;
  double tau = p.initial;
  std::vector<double> breaks;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (j > 0) {
      const double t0 = grid[j - 1];
      const double t1 = grid[j];
      breaks.clear();
      breaks.push_back(t0);
      for (double b : schedule.regime_breaks(t0, t1)) breaks.push_back(b);
      breaks.push_back(t1);
      // Regime multipliers are piecewise constant; integrate each piece
      // separately so the right-hand side is smooth within every sub-step.
      for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
        const double span = breaks[b + 1] - breaks[b];
        const Rhs f{p.rate * multiplier(0.5 * (breaks[b] + breaks[b + 1])), p.exponent};
        const auto steps = static_cast<int>(std::ceil(span / options.max_substep - 1e-12));
        const double h = span / std::max(steps, 1);
        for (int s = 0; s < std::max(steps, 1); ++s) tau = rk4_step(f, tau, h);
      }
      if (!std::isfinite(tau)) non_finite(grid[j]);
      tau = std::clamp(tau, 0.0, 1.0);
    }
    while (next_mark < traj.marks.size() && traj.marks[next_mark].index == j) {
      traj.pre_cleaning[static_cast<Eigen::Index>(next_mark)] = tau;
      tau = (1.0 - traj.marks[next_mark].efficiency) * tau;
      ++next_mark;
    }
    traj.values[static_cast<Eigen::Index>(j)] = tau;
  }
  return traj;
}

Ensemble run_ensemble(std::span<const InputVector> xs, const MaintenanceSchedule& schedule,
                      const TimeGrid& grid, const SimulatorOptions& options) {
  if (xs.empty()) throw ConfigError("run_ensemble: no input vectors");
  schedule.validate(grid);

  const auto marks = schedule.marks(grid);
  const auto T = static_cast<Eigen::Index>(grid.size());
  const auto C = static_cast<Eigen::Index>(marks.size());
  const auto N = static_cast<Eigen::Index>(xs.size());
  Ensemble ens{grid, marks, Eigen::MatrixXd(T, N), Eigen::MatrixXd(C, N),
               std::vector<InputVector>(xs.begin(), xs.end()), Provenance::prior};

  parallel_for(xs.size(), [&](std::size_t i) {
    DegradationTrajectory traj;
    try {
      traj = simulate_trajectory(xs[i], schedule, grid, options);
    } catch (const ConfigError& e) {
      throw ConfigError("member " + std::to_string(i) + ": " + e.what());
    } catch (const NumericalError& e) {
      throw NumericalError("member " + std::to_string(i) + ": " + e.what());
    }
    const auto col = static_cast<Eigen::Index>(i);
    ens.values.col(col) = traj.values;
    ens.pre_cleaning.col(col) = traj.pre_cleaning;
  });
  return ens;
}

}  // namespace clogfuse::sim
