#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "clogfuse/sim/ensemble.hpp"
#include "clogfuse/sim/prior.hpp"
#include "clogfuse/surrogate/multi_index.hpp"

namespace clogfuse::surrogate {

using sim::InputVector;
using sim::PriorSpec;

/// Vector polynomial chaos expansion: one set of Legendre coefficients per
/// output (grid time). Inputs are mapped affinely from the prior box onto
/// [-1, 1]^d before evaluating the basis.
struct Surrogate {
  std::vector<MultiIndex> multi_indices;
  Eigen::MatrixXd coeffs;  ///< outputs x basis size
  PriorSpec bounds;
  int degree = 0;

  std::size_t dim() const noexcept { return bounds.dim(); }
  std::size_t basis_size() const noexcept { return multi_indices.size(); }
  std::size_t n_outputs() const noexcept { return static_cast<std::size_t>(coeffs.rows()); }
};

/// Affine map of the prior box onto [-1, 1]^d. Degenerate dimensions
/// (lo == hi) map to 0.
Eigen::VectorXd standardize(const PriorSpec& bounds, const InputVector& x);

/// Basis evaluations Psi_alpha(standardize(x)) for one input.
Eigen::VectorXd basis_row(const std::vector<MultiIndex>& multi_indices, const PriorSpec& bounds,
                          const InputVector& x);

/// Rows are design points, columns are basis functions.
Eigen::MatrixXd design_matrix(const std::vector<MultiIndex>& multi_indices,
                              const PriorSpec& bounds, std::span<const InputVector> xs);

/// Ordinary least squares per output on the total-degree Legendre basis,
/// solved with a column-pivoted QR factorisation.
///
/// `outputs` is (n_outputs x n_design): column i holds the model response at
/// xs[i]. Throws ConfigError if fewer design points than basis functions
/// (message states the required size) or an input has the wrong dimension;
/// NumericalError naming the deficient basis columns if the design is rank
/// deficient, or if outputs are non-finite.
Surrogate fit_vpce(std::span<const InputVector> xs, const Eigen::MatrixXd& outputs,
                   const PriorSpec& bounds, int degree);

/// Fits on the ensemble's grid values.
Surrogate fit_vpce(std::span<const InputVector> xs, const sim::Ensemble& ys,
                   const PriorSpec& bounds, int degree);

struct Prediction {
  Eigen::VectorXd values;
  bool out_of_bounds = false;  ///< extrapolation: unvalidated
};

/// Raw surrogate output (no clamping or monotone projection). Throws
/// ConfigError on dimension mismatch.
Prediction predict(const Surrogate& s, const InputVector& x);

/// Column i is predict(s, xs[i]).values.
Eigen::MatrixXd predict_many(const Surrogate& s, std::span<const InputVector> xs);

}  // namespace clogfuse::surrogate
