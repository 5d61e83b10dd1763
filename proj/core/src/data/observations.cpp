#include "clogfuse/data/observations.hpp"

#include <cmath>

#include "clogfuse/util/error.hpp"

namespace clogfuse::data {

GroupKind kind_of(std::string_view label) noexcept {
  if (label == "TVE") return GroupKind::tve;
  if (label == "ESTICOL") return GroupKind::esticol;
  return GroupKind::custom;
}

void ObservationGroup::validate() const {
  const std::string where = "group '" + label + "'";
  if (label.empty() || label.find_first_of(",\r\n") != std::string::npos)
    throw DataError(where + ": label must be non-empty and free of commas/newlines");
  if (times.size() != values.size()) throw DataError(where + ": times and values differ in length");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw DataError(where + ": sigma must be >= 0");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i])) throw DataError(where + ": non-finite time");
    if (i > 0 && !(times[i] > times[i - 1]))
      throw DataError(where + ": times must be strictly increasing (observation " +
                      std::to_string(i) + ")");
    if (!(values[i] >= 0.0 && values[i] <= 1.0))
      throw DataError(where + ": value outside [0, 1] (observation " + std::to_string(i) + ")");
  }
}

std::size_t Dataset::total_observations() const noexcept {
  std::size_t n = 0;
  for (const auto& g : groups) n += g.size();
  return n;
}

Dataset Dataset::up_to(double t) const {
  Dataset out;
  out.groups.reserve(groups.size());
  for (const auto& g : groups) {
    ObservationGroup kept{g.label, {}, {}, g.sigma};
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g.times[i] > t) continue;
      kept.times.push_back(g.times[i]);
      kept.values.push_back(g.values[i]);
    }
    out.groups.push_back(std::move(kept));
  }
  return out;
}

}  // namespace clogfuse::data
