#include "clogfuse/fusion/bmu.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "clogfuse/fusion/observation_operator.hpp"
#include "clogfuse/util/error.hpp"
#include "clogfuse/util/rng.hpp"

namespace clogfuse::fusion {

Eigen::VectorXd WeightedInputSample::normalized_weights() const {
  const double top = log_weights.maxCoeff();
  Eigen::VectorXd w = (log_weights.array() - top).exp();
  return w / w.sum();
}

Eigen::VectorXd WeightedInputSample::weighted_mean() const {
  const Eigen::VectorXd w = normalized_weights();
  Eigen::VectorXd m = Eigen::VectorXd::Zero(inputs.front().size());
  for (std::size_t i = 0; i < inputs.size(); ++i) m += w[static_cast<Eigen::Index>(i)] * inputs[i];
  return m;
}

Eigen::VectorXd WeightedInputSample::weighted_std() const {
  const Eigen::VectorXd w = normalized_weights();
  const Eigen::VectorXd m = weighted_mean();
  Eigen::VectorXd v = Eigen::VectorXd::Zero(m.size());
  for (std::size_t i = 0; i < inputs.size(); ++i)
    v += w[static_cast<Eigen::Index>(i)] * (inputs[i] - m).array().square().matrix();
  return v.cwiseSqrt();
}

std::vector<std::size_t> systematic_resample(const Eigen::VectorXd& weights, std::size_t m,
                                             std::uint64_t seed) {
  std::vector<std::size_t> out;
  out.reserve(m);
  if (m == 0) return out;
  auto engine = rng::substream(seed, {rng::tag("systematic-resample")});
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double step = 1.0 / static_cast<double>(m);
  const double u0 = unit(engine) * step;

  const auto n = static_cast<std::size_t>(weights.size());
  double cumulative = weights[0];
  std::size_t i = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const double u = u0 + static_cast<double>(k) * step;
    while (u > cumulative && i + 1 < n) cumulative += weights[static_cast<Eigen::Index>(++i)];
    out.push_back(i);
  }
  return out;
}

WeightedInputSample importance_weights(std::vector<InputVector> inputs, const sim::TimeGrid& grid,
                                       const ForwardModel& forward, const data::Dataset& ds,
                                       std::size_t n_resample, std::uint64_t seed,
                                       const BmuOptions& options) {
  if (inputs.empty()) throw ConfigError("bmu: needs at least one input sample");
  const auto obs = flatten(ds);
  const auto n = static_cast<Eigen::Index>(inputs.size());

  WeightedInputSample out;
  out.log_weights = Eigen::VectorXd::Zero(n);
  double best_misfit = std::numeric_limits<double>::infinity();

  if (!obs.empty()) {
    const Eigen::MatrixXd outputs = forward(inputs);
    if (outputs.rows() != static_cast<Eigen::Index>(grid.size()) || outputs.cols() != n)
      throw ConfigError("bmu: forward model output shape does not match grid and sample size");
    const Eigen::MatrixXd predicted = observe(grid, outputs, obs);
    for (Eigen::Index i = 0; i < n; ++i) {
      double lw = 0.0;
      double misfit = 0.0;
      for (std::size_t k = 0; k < obs.size(); ++k) {
        const double r = obs[k].value - predicted(static_cast<Eigen::Index>(k), i);
        const double r2 = r * r;
        misfit += r2;
        if (obs[k].sigma > 0.0) {
          lw -= r2 / (2.0 * obs[k].sigma * obs[k].sigma);
        } else if (r2 > 0.0) {
          lw = -std::numeric_limits<double>::infinity();
        }
      }
      if (!std::isfinite(misfit)) lw = -std::numeric_limits<double>::infinity();
      out.log_weights[i] = lw;
      best_misfit = std::min(best_misfit, misfit);
    }
  }

  const double top = out.log_weights.maxCoeff();
  if (!std::isfinite(top)) {
    std::ostringstream msg;
    msg << "bmu: every importance weight is zero (surrogate and data incompatible); "
        << "smallest squared misfit over the sample = " << best_misfit;
    throw NumericalError(msg.str());
  }

  out.inputs = std::move(inputs);
  const Eigen::VectorXd w = out.normalized_weights();
  out.ess = 1.0 / w.squaredNorm();
  const double floor = options.ess_floor_fraction * static_cast<double>(n);
  if (out.ess < floor) {
    std::ostringstream msg;
    msg << "bmu: effective sample size " << out.ess << " below floor " << floor;
    out.warnings.push_back(msg.str());
  }

  const bool uniform = (out.log_weights.array() == top).all();
  if (uniform && n_resample == out.inputs.size()) {
    out.resampled_indices.resize(n_resample);
    for (std::size_t i = 0; i < n_resample; ++i) out.resampled_indices[i] = i;
  } else {
    out.resampled_indices = systematic_resample(w, n_resample, seed);
  }
  out.resampled.reserve(n_resample);
  for (std::size_t idx : out.resampled_indices) out.resampled.push_back(out.inputs[idx]);
  return out;
}

WeightedInputSample bmu_posterior(const sim::PriorSpec& prior, const surrogate::Surrogate& s,
                                  const sim::TimeGrid& grid, const data::Dataset& ds,
                                  std::size_t n, std::uint64_t seed, const BmuOptions& options) {
  if (n == 0) throw ConfigError("bmu: n must be >= 1");
  if (s.n_outputs() != grid.size())
    throw ConfigError("bmu: surrogate has " + std::to_string(s.n_outputs()) +
                      " outputs but the grid has " + std::to_string(grid.size()) + " points");
  if (s.bounds.dim() != prior.dim())
    throw ConfigError("bmu: surrogate bounds do not match the prior");
  for (std::size_t j = 0; j < prior.dim(); ++j)
    if (s.bounds.bounds[j].lo != prior.bounds[j].lo || s.bounds.bounds[j].hi != prior.bounds[j].hi)
      throw ConfigError("bmu: surrogate bounds do not match the prior");

  auto inputs = sim::sample_prior(prior, n, rng::derive(seed, "bmu-prior"));
  const ForwardModel forward = [&s](std::span<const InputVector> xs) {
    return surrogate::predict_many(s, xs);
  };
  return importance_weights(std::move(inputs), grid, forward, ds, n, rng::derive(seed, "bmu-resample"),
                            options);
}

}  // namespace clogfuse::fusion
