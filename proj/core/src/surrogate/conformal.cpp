#include "clogfuse/surrogate/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "clogfuse/util/error.hpp"

namespace clogfuse::surrogate {

std::size_t conformal_rank(std::size_t n_cal, double alpha) {
  // The small offset keeps products like 20 * 0.95 from rounding up a rank.
  const double r = static_cast<double>(n_cal + 1) * (1.0 - alpha);
  return static_cast<std::size_t>(std::ceil(r - 1e-9));
}

ConformalPredictor calibrate_conformal(std::shared_ptr<const Surrogate> s,
                                       std::span<const InputVector> xs,
                                       const Eigen::MatrixXd& y, double alpha) {
  if (!s) throw ConfigError("calibrate_conformal: null surrogate");
  if (xs.empty()) throw ConfigError("calibrate_conformal: empty calibration set");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("calibrate_conformal: alpha must be in (0, 1)");
  if (static_cast<Eigen::Index>(xs.size()) != y.cols() ||
      y.rows() != static_cast<Eigen::Index>(s->n_outputs()))
    throw ConfigError("calibrate_conformal: calibration outputs have the wrong shape");

  ConformalPredictor cp;
  cp.alpha = alpha;
  cp.n_cal = xs.size();
  const std::size_t k = conformal_rank(cp.n_cal, alpha);

  const Eigen::MatrixXd residual = (y - predict_many(*s, xs)).cwiseAbs();
  cp.radius.resize(residual.rows());
  std::vector<double> scores(cp.n_cal);
  for (Eigen::Index t = 0; t < residual.rows(); ++t) {
    if (k > cp.n_cal) {
      cp.radius[t] = std::numeric_limits<double>::infinity();
      continue;
    }
    for (std::size_t i = 0; i < cp.n_cal; ++i) scores[i] = residual(t, static_cast<Eigen::Index>(i));
    std::nth_element(scores.begin(), scores.begin() + static_cast<std::ptrdiff_t>(k - 1), scores.end());
    cp.radius[t] = scores[k - 1];
  }
  cp.surrogate = std::move(s);
  return cp;
}

PredictionInterval predict_interval(const ConformalPredictor& cp, const InputVector& x) {
  const Prediction p = predict(*cp.surrogate, x);
  PredictionInterval out;
  out.lo = p.values - cp.radius;
  out.hi = p.values + cp.radius;
  out.unbounded = !cp.bounded();
  out.out_of_bounds = p.out_of_bounds;
  return out;
}

}  // namespace clogfuse::surrogate
