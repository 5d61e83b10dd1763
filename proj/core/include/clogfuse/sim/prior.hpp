#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace clogfuse::sim {

/// One uncertain simulator input, as a point in the prior's support.
using InputVector = Eigen::VectorXd;

struct Bounds {
  double lo = 0.0;
  double hi = 0.0;
};

/// Independent uniform priors over a box. Dimension names are optional and
/// only used for reporting.
struct PriorSpec {
  std::vector<Bounds> bounds;
  std::vector<std::string> names;

  std::size_t dim() const noexcept { return bounds.size(); }

  /// Throws ConfigError on d == 0, lo > hi, non-finite bounds, or a names
  /// list whose length differs from d.
  void validate() const;

  bool contains(const InputVector& x) const noexcept;
  InputVector mean() const;
};

/// Default five-dimensional stand-in prior:
/// (deposition rate k [1/yr], saturation exponent a, initial clogging tau0,
///  chi1 rate multiplier, chi2 rate multiplier).
PriorSpec default_prior();

/// n independent uniform draws. Draw i is a pure function of (seed, i).
std::vector<InputVector> sample_prior(const PriorSpec& spec, std::size_t n,
                                      std::uint64_t seed);

}  // namespace clogfuse::sim
