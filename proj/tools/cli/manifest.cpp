#include "cli/manifest.hpp"

#include <cstdio>
#include <fstream>

#ifndef CLOGFUSE_VERSION
#define CLOGFUSE_VERSION "unknown"
#endif

namespace clogfuse::cli {

std::string config_hash(const nlohmann::json& config) {
  const std::string text = config.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Manifest::Manifest(std::string subcommand, const nlohmann::json& config, std::uint64_t seed) {
  doc_["tool"] = "clogfuse";
  doc_["version"] = CLOGFUSE_VERSION;
  doc_["subcommand"] = std::move(subcommand);
  doc_["config_hash"] = config_hash(config);
  doc_["config"] = config;
  doc_["seeds"] = {{"master", seed}};
  doc_["warnings"] = nlohmann::json::array();
  doc_["timings_ms"] = nlohmann::json::object();
}

void Manifest::warn(const std::string& message) { doc_["warnings"].push_back(message); }

void Manifest::record_seed(const std::string& stage, std::uint64_t seed) { doc_["seeds"][stage] = seed; }

void Manifest::record_timing(const std::string& stage, std::chrono::steady_clock::duration elapsed) {
  doc_["timings_ms"][stage] = std::chrono::duration<double, std::milli>(elapsed).count();
}

void Manifest::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << doc_.dump(2) << '\n';
}

}  // namespace clogfuse::cli
