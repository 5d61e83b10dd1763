#pragma once

#include <span>
#include <vector>

#include "clogfuse/sim/ensemble.hpp"
#include "clogfuse/sim/prior.hpp"
#include "clogfuse/sim/schedule.hpp"
#include "clogfuse/sim/time_grid.hpp"
#include "clogfuse/sim/trajectory.hpp"

namespace clogfuse::sim {

/// Parameters of the stand-in deposition model
///
///   d tau / dt = k * m(t) * (1 - tau)^a
///
/// between cleanings, with tau <- (1 - efficiency) * tau at each cleaning.
/// m(t) is the schedule's segment multiplier times the input multiplier of
/// the active regime.
struct StandInParameters {
  double rate = 0.0;       ///< k >= 0, 1/yr
  double exponent = 1.0;   ///< a >= 1
  double initial = 0.0;    ///< tau0 in [0, 1]
  double chi1_multiplier = 1.0;
  double chi2_multiplier = 1.0;

  /// Reads the input vector layout (k, a, tau0, m_chi1, m_chi2). Inputs
  /// beyond the fifth are inert; missing multipliers default to 1. Requires
  /// d >= 3.
  static StandInParameters from_inputs(const InputVector& x);
};

struct SimulatorOptions {
  /// Upper bound on the fourth-order Runge-Kutta sub-step, years.
  double max_substep = 1.0 / 48.0;
};

/// Deterministic stand-in forward model. Throws ConfigError for invalid
/// parameters or schedule events outside the grid, NumericalError (with the
/// offending time) if the state becomes non-finite.
DegradationTrajectory simulate_trajectory(const InputVector& x,
                                          const MaintenanceSchedule& schedule,
                                          const TimeGrid& grid,
                                          const SimulatorOptions& options = {});

/// Member i is simulate_trajectory(xs[i], ...). Errors are rethrown with the
/// member index prefixed. Evaluated in parallel; the result does not depend
/// on evaluation order.
Ensemble run_ensemble(std::span<const InputVector> xs,
                      const MaintenanceSchedule& schedule, const TimeGrid& grid,
                      const SimulatorOptions& options = {});

}  // namespace clogfuse::sim
