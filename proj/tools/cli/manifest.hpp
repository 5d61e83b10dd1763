#pragma once

#include <chrono>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

namespace clogfuse::cli {

/// Run record written as manifest.json. Everything except "timings_ms" is a
/// pure function of (config, seed).
class Manifest {
 public:
  Manifest(std::string subcommand, const nlohmann::json& config, std::uint64_t seed);

  nlohmann::json& operator[](const std::string& key) { return doc_[key]; }
  void warn(const std::string& message);
  void record_seed(const std::string& stage, std::uint64_t seed);
  void record_timing(const std::string& stage, std::chrono::steady_clock::duration elapsed);
  void write(const std::filesystem::path& path) const;
  const nlohmann::json& json() const noexcept { return doc_; }

 private:
  nlohmann::json doc_;
};

/// FNV-1a of the canonical (sorted-key, compact) JSON dump, as 16 hex digits.
std::string config_hash(const nlohmann::json& config);

/// Times a stage into the manifest.
class StageTimer {
 public:
  StageTimer(Manifest& m, std::string stage)
      : manifest_(m), stage_(std::move(stage)), start_(std::chrono::steady_clock::now()) {}
  ~StageTimer() { manifest_.record_timing(stage_, std::chrono::steady_clock::now() - start_); }
  StageTimer(const StageTimer&) = delete;
  StageTimer& operator=(const StageTimer&) = delete;

 private:
  Manifest& manifest_;
  std::string stage_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace clogfuse::cli
