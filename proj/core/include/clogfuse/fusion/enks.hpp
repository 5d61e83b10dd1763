#pragma once

#include <cstdint>

#include "clogfuse/data/observations.hpp"
#include "clogfuse/fusion/windows.hpp"
#include "clogfuse/sim/ensemble.hpp"

namespace clogfuse::fusion {

struct EnksOptions {
  /// Clamp to [0,1] and isotonic projection between cleanings after the
  /// update. Disable only for linear-Gaussian consistency checks.
  bool project = true;
};

/// Stochastic (perturbed-observation) ensemble Kalman smoother update over
/// one window.
///
/// The joint state is every grid value whose interval touches the window;
/// at a cleaning point the state variable is the pre-cleaning value, and
/// the grid value is (1 - efficiency) times it. Observations map to the
/// state by linear interpolation; R is diagonal from the group sigmas.
///   K = C_xh (C_hh + R)^-1,  x_i += K (y + e_i - H x_i),
/// with e_i drawn from (seed, window index, member index).
///
/// A window without observations returns the ensemble unchanged. Throws
/// ConfigError for N < 2 or a zero-noise observation in the window
/// (see data::validate_dataset). The result has provenance enks and no
/// member inputs.
sim::Ensemble enks_window(const sim::Ensemble& ens, const AssimilationWindow& window,
                          const data::Dataset& ds, std::uint64_t seed,
                          const EnksOptions& options = {});

}  // namespace clogfuse::fusion
