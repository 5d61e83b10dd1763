#include "cli/config.hpp"

#include <cmath>
#include <fstream>

#include "clogfuse/fusion/windows.hpp"
#include "clogfuse/util/error.hpp"

namespace clogfuse::cli {

using nlohmann::json;

namespace {

/// Typed access with dotted-key diagnostics.
class Reader {
 public:
  Reader(const json& doc, std::string prefix) : doc_(doc), prefix_(std::move(prefix)) {}

  std::string key(const std::string& name) const { return prefix_.empty() ? name : prefix_ + "." + name; }
  bool has(const std::string& name) const { return doc_.is_object() && doc_.contains(name) && !doc_.at(name).is_null(); }
  const json& raw(const std::string& name) const { return doc_.at(name); }

  Reader child(const std::string& name) const {
    static const json empty = json::object();
    if (!has(name)) return Reader(empty, key(name));
    if (!doc_.at(name).is_object()) throw ConfigKeyError(key(name), "expected an object");
    return Reader(doc_.at(name), key(name));
  }

  double number(const std::string& name) const {
    if (!has(name)) throw ConfigKeyError(key(name), "required");
    const json& v = doc_.at(name);
    if (!v.is_number()) throw ConfigKeyError(key(name), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigKeyError(key(name), "must be finite");
    return d;
  }
  double number(const std::string& name, double fallback) const { return has(name) ? number(name) : fallback; }
  std::optional<double> optional_number(const std::string& name) const {
    return has(name) ? std::optional<double>(number(name)) : std::nullopt;
  }

  std::size_t count(const std::string& name, std::size_t fallback) const {
    if (!has(name)) return fallback;
    const json& v = doc_.at(name);
    if (!v.is_number_integer() || v.get<long long>() < 0)
      throw ConfigKeyError(key(name), "expected a non-negative integer");
    return v.get<std::size_t>();
  }

  int integer(const std::string& name, int fallback) const {
    if (!has(name)) return fallback;
    const json& v = doc_.at(name);
    if (!v.is_number_integer()) throw ConfigKeyError(key(name), "expected an integer");
    return v.get<int>();
  }

  bool boolean(const std::string& name, bool fallback) const {
    if (!has(name)) return fallback;
    if (!doc_.at(name).is_boolean()) throw ConfigKeyError(key(name), "expected true or false");
    return doc_.at(name).get<bool>();
  }

  std::string string(const std::string& name, const std::string& fallback) const {
    if (!has(name)) return fallback;
    if (!doc_.at(name).is_string()) throw ConfigKeyError(key(name), "expected a string");
    return doc_.at(name).get<std::string>();
  }

  std::vector<double> numbers(const std::string& name) const {
    if (!has(name)) throw ConfigKeyError(key(name), "required");
    const json& v = doc_.at(name);
    if (!v.is_array()) throw ConfigKeyError(key(name), "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) throw ConfigKeyError(key(name), "expected an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

 private:
  const json& doc_;
  std::string prefix_;
};

template <typename F>
void checked(const std::string& key, F&& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    throw ConfigKeyError(key, e.what());
  } catch (const json::exception& e) {
    throw ConfigKeyError(key, e.what());
  }
}

sim::PriorSpec read_prior(const Reader& r) {
  if (!r.has("bounds")) return sim::default_prior();
  sim::PriorSpec p;
  const json& b = r.raw("bounds");
  if (!b.is_array()) throw ConfigKeyError(r.key("bounds"), "expected an array of [lo, hi] pairs");
  for (std::size_t j = 0; j < b.size(); ++j) {
    const json& pair = b[j];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
      throw ConfigKeyError(r.key("bounds") + "[" + std::to_string(j) + "]", "expected [lo, hi]");
    p.bounds.push_back({pair[0].get<double>(), pair[1].get<double>()});
  }
  if (r.has("names")) checked(r.key("names"), [&] { p.names = r.raw("names").get<std::vector<std::string>>(); });
  checked(r.key("bounds"), [&] { p.validate(); });
  return p;
}

sim::TimeGrid read_grid(const Reader& r) {
  const double start = r.number("start", 0.0);
  const double end = r.number("end", 40.0);
  double step = 1.0 / 12.0;
  if (r.has("steps_per_year")) {
    const double spy = r.number("steps_per_year");
    if (!(spy > 0.0)) throw ConfigKeyError(r.key("steps_per_year"), "must be positive");
    step = 1.0 / spy;
  } else if (r.has("step")) {
    step = r.number("step");
  }
  sim::TimeGrid grid;
  checked(r.key("step"), [&] { grid = sim::TimeGrid::uniform(start, end, step); });
  return grid;
}

sim::MaintenanceSchedule read_schedule(const Reader& r, const sim::TimeGrid& grid) {
  if (!r.has("cleanings") && !r.has("regimes")) {
    auto s = sim::default_schedule();
    checked(r.key("cleanings"), [&] { s.validate(grid); });
    return s;
  }
  sim::MaintenanceSchedule s;
  if (r.has("cleanings")) {
    const json& arr = r.raw("cleanings");
    if (!arr.is_array()) throw ConfigKeyError(r.key("cleanings"), "expected an array");
    for (std::size_t c = 0; c < arr.size(); ++c) {
      const Reader e(arr[c], r.key("cleanings") + "[" + std::to_string(c) + "]");
      sim::Cleaning cl;
      cl.time = e.number("time");
      cl.efficiency = e.number("efficiency");
      checked(e.key("kind"), [&] { cl.kind = sim::cleaning_kind_from_string(e.string("kind", "preventive")); });
      s.cleanings.push_back(cl);
    }
  }
  if (r.has("regimes")) {
    const json& arr = r.raw("regimes");
    if (!arr.is_array()) throw ConfigKeyError(r.key("regimes"), "expected an array");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const Reader e(arr[k], r.key("regimes") + "[" + std::to_string(k) + "]");
      sim::RegimeSegment seg;
      seg.start = e.number("start");
      seg.end = e.number("end");
      seg.rate_multiplier = e.number("multiplier", 1.0);
      checked(e.key("regime"), [&] { seg.regime = sim::regime_from_string(e.string("regime", "chi1")); });
      s.regimes.push_back(seg);
    }
  }
  checked(r.key("cleanings"), [&] { s.validate(grid); });
  return s;
}

void require_probability(const std::string& key, double v) {
  if (!(v > 0.0 && v < 1.0)) throw ConfigKeyError(key, "must lie strictly between 0 and 1");
}

}  // namespace

prognostics::RulQuery PipelineConfig::rul_query() const {
  if (!rul.threshold) throw ConfigKeyError("rul.threshold", "required (no default clogging threshold)");
  prognostics::RulQuery q;
  q.threshold = *rul.threshold;
  if (rul.t_start) {
    q.t_start = *rul.t_start;
  } else {
    q.t_start = grid.front();
    for (const auto& cl : schedule.cleanings)
      if (!present_time || cl.time <= *present_time) q.t_start = cl.time;
  }
  q.horizon_end = rul.horizon_end ? *rul.horizon_end : grid.back();
  checked("rul", [&] { q.validate(grid); });
  return q;
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigKeyError(assignment, "override must have the form key=value");
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  json* node = &doc;
  std::size_t start = 0;
  for (;;) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) throw ConfigKeyError(key, "empty path component");
    if (!node->is_object()) {
      if (!node->is_null()) throw ConfigKeyError(key, "cannot descend into a non-object value");
      *node = json::object();
    }
    if (dot == std::string::npos) {
      (*node)[part] = std::move(value);
      return;
    }
    node = &(*node)[part];
    start = dot + 1;
  }
}

json read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigKeyError(path.string(), "config file not found or unreadable");
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_object())
    throw ConfigKeyError(path.string(), "config file is not a JSON object");
  return doc;
}

PipelineConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw ConfigKeyError("<root>", "expected a JSON object");
  const Reader root(doc, "");
  PipelineConfig c;
  c.source = doc;

  if (!root.has("seed")) throw ConfigKeyError("seed", "required");
  {
    const json& s = root.raw("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
      throw ConfigKeyError("seed", "expected a non-negative integer");
    c.seed = s.get<std::uint64_t>();
  }

  c.prior = read_prior(root.child("prior"));
  c.grid = read_grid(root.child("grid"));
  c.schedule = read_schedule(root.child("schedule"), c.grid);
  c.present_time = root.optional_number("present_time");
  if (c.present_time && !c.grid.contains(*c.present_time))
    throw ConfigKeyError("present_time", "must lie within the grid span");

  const Reader sim_r = root.child("simulate");
  c.simulate_size = sim_r.count("ensemble_size", 500);
  if (c.simulate_size == 0) throw ConfigKeyError(sim_r.key("ensemble_size"), "must be >= 1");
  c.assimilation.simulator.max_substep = sim_r.number("max_substep", 1.0 / 48.0);
  if (!(c.assimilation.simulator.max_substep > 0.0))
    throw ConfigKeyError(sim_r.key("max_substep"), "must be positive");

  const Reader sr = root.child("surrogate");
  c.surrogate.degree = sr.integer("degree", 3);
  if (c.surrogate.degree < 0 || c.surrogate.degree > 10) throw ConfigKeyError(sr.key("degree"), "must lie in [0, 10]");
  c.surrogate.design_size = sr.count("design_size", 0);
  const std::size_t P = surrogate::total_degree_size(c.prior.dim(), c.surrogate.degree);
  if (c.surrogate.design_size != 0 && c.surrogate.design_size < 2 * P)
    throw ConfigKeyError(sr.key("design_size"), "must be at least 2 x basis size = " + std::to_string(2 * P));
  c.surrogate.test_size = sr.count("test_size", 200);
  if (c.surrogate.test_size < 2) throw ConfigKeyError(sr.key("test_size"), "must be >= 2");
  c.surrogate.calibration_size = sr.count("calibration_size", 199);
  if (c.surrogate.calibration_size < 1) throw ConfigKeyError(sr.key("calibration_size"), "must be >= 1");
  c.surrogate.audit_size = sr.count("audit_size", 1000);
  if (c.surrogate.audit_size < 1) throw ConfigKeyError(sr.key("audit_size"), "must be >= 1");
  c.surrogate.alpha = sr.number("alpha", 0.1);
  require_probability(sr.key("alpha"), c.surrogate.alpha);

  const Reader dr = root.child("data");
  if (dr.has("path")) {
    std::filesystem::path p = dr.string("path", "");
    c.data.path = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  }
  const Reader syn = dr.child("synthetic");
  auto& sc = c.data.synthetic;
  sc.tve_count_min = syn.integer("tve_count_min", sc.tve_count_min);
  sc.tve_count_max = syn.integer("tve_count_max", sc.tve_count_max);
  sc.tve_sigma = syn.number("tve_sigma", sc.tve_sigma);
  sc.esticol_per_year_min = syn.integer("esticol_per_year_min", sc.esticol_per_year_min);
  sc.esticol_per_year_max = syn.integer("esticol_per_year_max", sc.esticol_per_year_max);
  sc.esticol_sigma = syn.number("esticol_sigma", sc.esticol_sigma);
  sc.esticol_start = syn.number("esticol_start", sc.esticol_start);
  sc.observe_until = c.present_time ? *c.present_time : c.grid.back();
  if (sc.tve_count_min < 0 || sc.tve_count_max < sc.tve_count_min)
    throw ConfigKeyError(syn.key("tve_count_max"), "inconsistent TVE count range");
  if (sc.esticol_per_year_min < 0 || sc.esticol_per_year_max < sc.esticol_per_year_min)
    throw ConfigKeyError(syn.key("esticol_per_year_max"), "inconsistent ESTICOL count range");
  if (!(sc.tve_sigma > 0.0)) throw ConfigKeyError(syn.key("tve_sigma"), "must be positive");
  if (!(sc.esticol_sigma > 0.0)) throw ConfigKeyError(syn.key("esticol_sigma"), "must be positive");

  const Reader ar = root.child("assimilation");
  auto& a = c.assimilation;
  a.ensemble_size = ar.count("ensemble_size", 500);
  if (a.ensemble_size < 2) throw ConfigKeyError(ar.key("ensemble_size"), "must be >= 2");
  const std::string forward = ar.string("forward", "surrogate");
  if (forward == "surrogate")
    a.forward = fusion::ForwardMode::surrogate;
  else if (forward == "simulator")
    a.forward = fusion::ForwardMode::simulator;
  else
    throw ConfigKeyError(ar.key("forward"), "expected 'surrogate' or 'simulator'");
  a.surrogate.degree = c.surrogate.degree;
  a.surrogate.design_size = c.surrogate.design_size;
  a.present_time = c.present_time;
  a.bmu.ess_floor_fraction = ar.number("ess_floor_fraction", 0.01);
  a.enks.project = ar.boolean("project", true);
  if (ar.has("windows") && !(ar.raw("windows").is_string() && ar.raw("windows").get<std::string>() == "at-cleanings")) {
    const auto b = ar.numbers("windows");
    checked(ar.key("windows"), [&] {
      a.windows = fusion::windows_from_boundaries(b);
      fusion::validate_windows(a.windows, c.grid.front(),
                               c.present_time ? *c.present_time : c.grid.back());
    });
  }

  const Reader rr = root.child("rul");
  c.rul.threshold = rr.optional_number("threshold");
  if (c.rul.threshold) require_probability(rr.key("threshold"), *c.rul.threshold);
  c.rul.t_start = rr.optional_number("t_start");
  if (c.rul.t_start && !c.grid.contains(*c.rul.t_start))
    throw ConfigKeyError(rr.key("t_start"), "must lie within the grid span");
  c.rul.horizon_end = rr.optional_number("horizon_end");
  if (rr.has("quantiles")) c.rul.quantiles = rr.numbers("quantiles");
  for (double q : c.rul.quantiles)
    if (!(q >= 0.0 && q <= 1.0)) throw ConfigKeyError(rr.key("quantiles"), "levels must lie in [0, 1]");
  if (c.rul.threshold) (void)c.rul_query();

  c.output_dir = root.string("output_dir", c.output_dir.string());
  const Reader rep = root.child("report");
  c.report_members = rep.count("members", 50);
  c.report_bins = rep.count("bins", 40);
  if (c.report_bins == 0) throw ConfigKeyError(rep.key("bins"), "must be >= 1");
  return c;
}

}  // namespace clogfuse::cli
