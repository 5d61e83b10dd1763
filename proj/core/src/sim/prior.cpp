#include "clogfuse/sim/prior.hpp"

#include <cmath>
#include <string>

#include "clogfuse/util/error.hpp"
#include "clogfuse/util/rng.hpp"

namespace clogfuse::sim {

void PriorSpec::validate() const {
  if (bounds.empty()) throw ConfigError("prior: dimension must be >= 1");
  for (std::size_t j = 0; j < bounds.size(); ++j) {
    const auto& b = bounds[j];
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi))
      throw ConfigError("prior: non-finite bound in dimension " + std::to_string(j));
    if (b.lo > b.hi)
      throw ConfigError("prior: lo > hi in dimension " + std::to_string(j));
  }
  if (!names.empty() && names.size() != bounds.size())
    throw ConfigError("prior: names list length differs from dimension");
}

bool PriorSpec::contains(const InputVector& x) const noexcept {
  if (static_cast<std::size_t>(x.size()) != bounds.size()) return false;
  for (std::size_t j = 0; j < bounds.size(); ++j) {
    const double v = x[static_cast<Eigen::Index>(j)];
    if (!(v >= bounds[j].lo && v <= bounds[j].hi)) return false;
  }
  return true;
}

InputVector PriorSpec::mean() const {
  InputVector m(static_cast<Eigen::Index>(bounds.size()));
  for (std::size_t j = 0; j < bounds.size(); ++j)
    m[static_cast<Eigen::Index>(j)] = 0.5 * (bounds[j].lo + bounds[j].hi);
  return m;
}

PriorSpec default_prior() {
  PriorSpec p;
  p.bounds = {{0.01, 0.05}, {1.0, 2.0}, {0.0, 0.05}, {0.8, 1.2}, {1.1, 1.8}};
  p.names = {"rate", "exponent", "initial", "chi1_multiplier", "chi2_multiplier"};
  return p;
}

std::vector<InputVector> sample_prior(const PriorSpec& spec, std::size_t n,
                                      std::uint64_t seed) {
  spec.validate();
  const auto d = static_cast<Eigen::Index>(spec.dim());
  std::vector<InputVector> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto engine = rng::substream(seed, {rng::tag("prior-draw"), i});
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    InputVector x(d);
    for (Eigen::Index j = 0; j < d; ++j) {
      const auto& b = spec.bounds[static_cast<std::size_t>(j)];
      // lo + 0 * u keeps degenerate supports exact.
      x[j] = b.lo + (b.hi - b.lo) * unit(engine);
      if (x[j] > b.hi) x[j] = b.hi;
    }
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace clogfuse::sim
