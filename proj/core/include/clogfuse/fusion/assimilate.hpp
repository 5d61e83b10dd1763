#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "clogfuse/data/observations.hpp"
#include "clogfuse/fusion/bmu.hpp"
#include "clogfuse/fusion/enks.hpp"
#include "clogfuse/fusion/windows.hpp"
#include "clogfuse/sim/ensemble.hpp"
#include "clogfuse/sim/simulator.hpp"
#include "clogfuse/surrogate/vpce.hpp"

namespace clogfuse::fusion {

/// Error raised inside one pipeline stage; what() is prefixed with the stage.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

enum class ForwardMode { surrogate, simulator };

struct SurrogateSettings {
  int degree = 3;
  std::size_t design_size = 0;  ///< 0 means twice the basis size
};

struct AssimilationConfig {
  std::size_t ensemble_size = 500;
  ForwardMode forward = ForwardMode::surrogate;
  SurrogateSettings surrogate;
  /// Observations after this time are ignored (the prognostics time).
  std::optional<double> present_time;
  /// Empty: windows at cleaning times plus the grid end.
  std::vector<AssimilationWindow> windows;
  BmuOptions bmu;
  EnksOptions enks;
  sim::SimulatorOptions simulator;
};

struct AssimilationResult {
  sim::Ensemble prior;
  sim::Ensemble bmu;
  std::vector<sim::Ensemble> enks;  ///< one per window, in time order
  WeightedInputSample bmu_sample;
  std::vector<AssimilationWindow> windows;
  std::optional<surrogate::Surrogate> surrogate;
  std::vector<std::string> warnings;

  const sim::Ensemble& final_ensemble() const { return enks.empty() ? bmu : enks.back(); }
};

/// Builds an ensemble from surrogate outputs (T x N). Pre-cleaning values
/// are recovered from the post-cleaning prediction (or the preceding grid
/// value for a full cleaning) and the result is projected onto the
/// physical constraints.
sim::Ensemble ensemble_from_predictions(const sim::TimeGrid& grid,
                                        const std::vector<sim::CleaningMark>& marks,
                                        const Eigen::MatrixXd& values,
                                        std::vector<InputVector> inputs,
                                        sim::Provenance provenance);

/// Offline two-stage conditioning:
///   1. N prior inputs, forward ensemble (surrogate fitted on a fresh design,
///      or the simulator directly);
///   2. importance-weighted input posterior given all observations up to the
///      present time, resampled to N inputs and pushed forward again;
///   3. sequential smoother updates over the windows in time order.
/// Each stage derives its randomness from the master seed, so the whole run
/// is a pure function of its arguments. Errors are rethrown as StageError.
AssimilationResult assimilate(const sim::PriorSpec& prior, const sim::MaintenanceSchedule& schedule,
                              const sim::TimeGrid& grid, const data::Dataset& ds,
                              const AssimilationConfig& config, std::uint64_t seed);

}  // namespace clogfuse::fusion
