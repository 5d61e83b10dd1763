#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "clogfuse/data/synthesize.hpp"
#include "clogfuse/fusion/assimilate.hpp"
#include "clogfuse/prognostics/rul.hpp"
#include "clogfuse/sim/prior.hpp"
#include "clogfuse/sim/schedule.hpp"
#include "clogfuse/sim/time_grid.hpp"

namespace clogfuse::cli {

/// Malformed configuration; `key` is the dotted path of the offending entry.
class ConfigKeyError : public std::runtime_error {
 public:
  ConfigKeyError(std::string key, const std::string& what)
      : std::runtime_error(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

struct SurrogateStudy {
  int degree = 3;
  std::size_t design_size = 0;  ///< 0: twice the basis size
  std::size_t test_size = 200;
  std::size_t calibration_size = 199;
  std::size_t audit_size = 1000;
  double alpha = 0.1;
};

struct DataSource {
  std::optional<std::filesystem::path> path;
  data::SyntheticScenario synthetic;
};

struct RulSettings {
  std::optional<double> threshold;  ///< required by rul and report
  std::optional<double> t_start;    ///< default: last cleaning, else grid start
  std::optional<double> horizon_end;
  std::vector<double> quantiles{0.05, 0.25, 0.5, 0.75, 0.95};
};

struct PipelineConfig {
  std::uint64_t seed = 0;
  sim::PriorSpec prior;
  sim::TimeGrid grid;
  sim::MaintenanceSchedule schedule;
  std::size_t simulate_size = 500;
  SurrogateStudy surrogate;
  DataSource data;
  fusion::AssimilationConfig assimilation;
  RulSettings rul;
  std::optional<double> present_time;
  std::filesystem::path output_dir = "clogfuse_out";
  std::size_t report_members = 50;
  std::size_t report_bins = 40;

  /// Canonical JSON the config was built from (after overrides).
  nlohmann::json source;

  prognostics::RulQuery rul_query() const;
};

/// Applies `key.path=value` to the document; the value is parsed as JSON
/// when possible and taken as a string otherwise.
void apply_override(nlohmann::json& doc, const std::string& assignment);

/// Builds and validates a config. Throws ConfigKeyError naming the key.
/// Relative data paths resolve against `base_dir`.
PipelineConfig parse_config(const nlohmann::json& doc,
                            const std::filesystem::path& base_dir = {});

/// Reads the file; throws ConfigKeyError("<file>") if missing or not JSON.
nlohmann::json read_config_file(const std::filesystem::path& path);

}  // namespace clogfuse::cli
