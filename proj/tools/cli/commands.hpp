#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "cli/config.hpp"
#include "cli/manifest.hpp"
#include "clogfuse/data/observations.hpp"
#include "clogfuse/fusion/assimilate.hpp"
#include "clogfuse/sim/trajectory.hpp"
#include "clogfuse/surrogate/conformal.hpp"
#include "clogfuse/surrogate/q2.hpp"

namespace clogfuse::cli {

struct Context {
  const PipelineConfig& config;
  std::filesystem::path out_dir;
  Manifest& manifest;
  std::ostream& log;
};

/// Observations from the configured file, or synthesised from a truth
/// trajectory drawn from the prior.
struct Observed {
  data::Dataset dataset;
  std::optional<sim::DegradationTrajectory> truth;
};

struct SurrogateStudyResult {
  std::shared_ptr<const surrogate::Surrogate> surrogate;
  surrogate::Q2Report q2;
  surrogate::ConformalPredictor conformal;
  Eigen::VectorXd coverage;  ///< per grid time, on the audit set
};

Observed obtain_observations(const Context& ctx);
SurrogateStudyResult run_surrogate_study(const Context& ctx);
fusion::AssimilationResult run_assimilation(const Context& ctx, const Observed& observed);

void cmd_simulate(const Context& ctx);
void cmd_surrogate(const Context& ctx);
void cmd_assimilate(const Context& ctx);
void cmd_rul(const Context& ctx);
void cmd_report(const Context& ctx);

}  // namespace clogfuse::cli
