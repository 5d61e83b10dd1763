#include "clogfuse/data/observation_io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "clogfuse/util/csv.hpp"
#include "clogfuse/util/error.hpp"

namespace clogfuse::data {

Dataset parse_observations(std::istream& in, const std::string& source) {
  auto fail = [&source](std::size_t line, const std::string& what) -> DataError {
    return DataError(source + ":" + std::to_string(line) + ": " + what);
  };

  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw fail(1, "missing header");
  ++lineno;
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  if (csv::trim(line) != kObservationHeader)
    throw fail(lineno, std::string("expected header '") + kObservationHeader + "'");

  Dataset ds;
  std::vector<std::string> closed_labels;
  while (std::getline(in, line)) {
    ++lineno;
    const auto text = csv::trim(line);
    if (text.empty()) continue;
    const auto fields = csv::split(text);
    if (fields.size() != 4)
      throw fail(lineno, "expected 4 fields, got " + std::to_string(fields.size()));

    const std::string label(csv::trim(fields[0]));
    if (label.empty()) throw fail(lineno, "empty group label");
    double t = 0.0, v = 0.0, sigma = 0.0;
    if (!csv::parse_double(fields[1], t) || !std::isfinite(t))
      throw fail(lineno, "cannot parse time '" + std::string(fields[1]) + "'");
    if (!csv::parse_double(fields[2], v)) throw fail(lineno, "cannot parse value '" + std::string(fields[2]) + "'");
    if (!csv::parse_double(fields[3], sigma)) throw fail(lineno, "cannot parse sigma '" + std::string(fields[3]) + "'");
    if (!(v >= 0.0 && v <= 1.0)) throw fail(lineno, "value " + std::string(fields[2]) + " outside [0, 1]");
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw fail(lineno, "sigma must be finite and >= 0");

    if (ds.groups.empty() || ds.groups.back().label != label) {
      for (const auto& seen : closed_labels)
        if (seen == label) throw fail(lineno, "rows of group '" + label + "' are not contiguous");
      if (!ds.groups.empty()) closed_labels.push_back(ds.groups.back().label);
      ds.groups.push_back({label, {}, {}, sigma});
    }
    auto& g = ds.groups.back();
    if (sigma != g.sigma) throw fail(lineno, "sigma differs within group '" + label + "'");
    if (!g.times.empty() && !(t > g.times.back()))
      throw fail(lineno, "times must be strictly increasing within group '" + label + "'");
    g.times.push_back(t);
    g.values.push_back(v);
  }
  return ds;
}

Dataset load_observations(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open observation file " + path.string());
  return parse_observations(in, path.string());
}

void write_observations(std::ostream& out, const Dataset& ds) {
  out << kObservationHeader << '\n';
  for (const auto& g : ds.groups) {
    g.validate();
    const std::string sigma = csv::format_double(g.sigma);
    for (std::size_t i = 0; i < g.size(); ++i)
      out << g.label << ',' << csv::format_double(g.times[i]) << ','
          << csv::format_double(g.values[i]) << ',' << sigma << '\n';
  }
}

void save_observations(const std::filesystem::path& path, const Dataset& ds) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_observations(out, ds);
}

}  // namespace clogfuse::data
