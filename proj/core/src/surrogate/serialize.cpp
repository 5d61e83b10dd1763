#include "clogfuse/surrogate/serialize.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "clogfuse/util/error.hpp"

namespace clogfuse::surrogate {

using nlohmann::json;

namespace {
constexpr const char* kFormatTag = "clogfuse-vpce";
}

std::string to_json(const Surrogate& s) {
  json j;
  j["format"] = kFormatTag;
  j["version"] = kSurrogateFormatVersion;
  j["degree"] = s.degree;
  j["dim"] = s.dim();
  json bounds = json::array();
  for (const auto& b : s.bounds.bounds) bounds.push_back({b.lo, b.hi});
  j["bounds"] = bounds;
  if (!s.bounds.names.empty()) j["names"] = s.bounds.names;
  j["multi_indices"] = s.multi_indices;
  json coeffs = json::array();
  for (Eigen::Index r = 0; r < s.coeffs.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < s.coeffs.cols(); ++c) row.push_back(s.coeffs(r, c));
    coeffs.push_back(std::move(row));
  }
  j["coeffs"] = std::move(coeffs);
  return j.dump(1);
}

Surrogate surrogate_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (j.at("format").get<std::string>() != kFormatTag)
      throw DataError("surrogate file: unexpected format tag");
    if (j.at("version").get<int>() != kSurrogateFormatVersion)
      throw DataError("surrogate file: unsupported version " + j.at("version").dump());

    Surrogate s;
    s.degree = j.at("degree").get<int>();
    for (const auto& b : j.at("bounds")) s.bounds.bounds.push_back({b.at(0).get<double>(), b.at(1).get<double>()});
    if (j.contains("names")) s.bounds.names = j.at("names").get<std::vector<std::string>>();
    s.bounds.validate();
    s.multi_indices = j.at("multi_indices").get<std::vector<MultiIndex>>();
    if (s.multi_indices != total_degree_set(s.bounds.dim(), s.degree))
      throw DataError("surrogate file: multi-index set does not match degree and dimension");

    const auto& coeffs = j.at("coeffs");
    const auto rows = static_cast<Eigen::Index>(coeffs.size());
    const auto cols = static_cast<Eigen::Index>(s.multi_indices.size());
    s.coeffs.resize(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const auto& row = coeffs.at(static_cast<std::size_t>(r));
      if (static_cast<Eigen::Index>(row.size()) != cols)
        throw DataError("surrogate file: coefficient row " + std::to_string(r) + " has wrong length");
      for (Eigen::Index c = 0; c < cols; ++c) s.coeffs(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
    }
    return s;
  } catch (const json::exception& e) {
    throw DataError(std::string("surrogate file: ") + e.what());
  } catch (const ConfigError& e) {
    throw DataError(std::string("surrogate file: ") + e.what());
  }
}

void save(const Surrogate& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << to_json(s) << '\n';
}

Surrogate load_surrogate(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open surrogate file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return surrogate_from_json(buf.str());
}

}  // namespace clogfuse::surrogate
