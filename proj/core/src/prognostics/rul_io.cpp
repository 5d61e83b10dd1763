#include "clogfuse/prognostics/rul_io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "clogfuse/util/csv.hpp"

namespace clogfuse::prognostics {

void write_rul_csv(std::ostream& out, const RulDistribution& rd) {
  out << "member,duration_years,censored\n";
  for (std::size_t i = 0; i < rd.per_member.size(); ++i) {
    const auto& d = rd.per_member[i];
    out << i << ',' << (d ? csv::format_double(*d) : std::string()) << ',' << (d ? 0 : 1) << '\n';
  }
}

void write_rul_csv(const std::filesystem::path& path, const RulDistribution& rd) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_rul_csv(out, rd);
}

std::string summary_to_json(const RulSummary& s, const RulQuery& q,
                            std::optional<double> present_time) {
  using nlohmann::json;
  auto number = [](double v) -> json { return std::isfinite(v) ? json(v) : json(nullptr); };
  json j;
  j["query"] = {{"threshold", q.threshold}, {"t_start", q.t_start}, {"horizon_end", q.horizon_end}};
  j["present_time"] = present_time ? json(*present_time) : json(nullptr);
  j["n_total"] = s.n_total;
  j["n_crossed"] = s.n_crossed;
  j["censored_fraction"] = s.censored_fraction;
  j["mean"] = number(s.mean);
  j["std"] = number(s.std);
  json qs = json::array();
  for (const auto& e : s.quantiles)
    qs.push_back({{"level", e.level},
                  {"value", e.value ? json(*e.value) : json(nullptr)},
                  {"censored_beyond_horizon", !e.value.has_value()}});
  j["quantiles"] = std::move(qs);
  return j.dump(2);
}

}  // namespace clogfuse::prognostics
