#include "clogfuse/surrogate/vpce.hpp"

#include <algorithm>
#include <string>

#include <Eigen/QR>

#include "clogfuse/surrogate/legendre.hpp"
#include "clogfuse/util/error.hpp"
#include "clogfuse/util/parallel.hpp"

namespace clogfuse::surrogate {

namespace {

void check_dim(const PriorSpec& bounds, const InputVector& x) {
  if (static_cast<std::size_t>(x.size()) != bounds.dim())
    throw ConfigError("input has dimension " + std::to_string(x.size()) + ", surrogate expects " +
                      std::to_string(bounds.dim()));
}

int max_degree(const std::vector<MultiIndex>& multi_indices) {
  int p = 0;
  for (const auto& alpha : multi_indices)
    for (int a : alpha) p = std::max(p, a);
  return p;
}

}  // namespace

Eigen::VectorXd standardize(const PriorSpec& bounds, const InputVector& x) {
  check_dim(bounds, x);
  Eigen::VectorXd z(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const auto& b = bounds.bounds[static_cast<std::size_t>(j)];
    const double width = b.hi - b.lo;
    z[j] = width > 0.0 ? (2.0 * x[j] - b.lo - b.hi) / width : 0.0;
  }
  return z;
}

Eigen::VectorXd basis_row(const std::vector<MultiIndex>& multi_indices, const PriorSpec& bounds,
                          const InputVector& x) {
  const Eigen::VectorXd z = standardize(bounds, x);
  const auto d = static_cast<std::size_t>(z.size());
  const int p = max_degree(multi_indices);

  // Univariate tables, one row of P_0..P_p per variable.
  std::vector<double> table(d * static_cast<std::size_t>(p + 1));
  for (std::size_t j = 0; j < d; ++j)
    legendre_all(z[static_cast<Eigen::Index>(j)],
                 std::span<double>(table).subspan(j * static_cast<std::size_t>(p + 1),
                                                  static_cast<std::size_t>(p + 1)));

  Eigen::VectorXd row(static_cast<Eigen::Index>(multi_indices.size()));
  for (std::size_t a = 0; a < multi_indices.size(); ++a) {
    double v = 1.0;
    for (std::size_t j = 0; j < d; ++j)
      v *= table[j * static_cast<std::size_t>(p + 1) + static_cast<std::size_t>(multi_indices[a][j])];
    row[static_cast<Eigen::Index>(a)] = v;
  }
  return row;
}

Eigen::MatrixXd design_matrix(const std::vector<MultiIndex>& multi_indices,
                              const PriorSpec& bounds, std::span<const InputVector> xs) {
  Eigen::MatrixXd psi(static_cast<Eigen::Index>(xs.size()),
                      static_cast<Eigen::Index>(multi_indices.size()));
  for (std::size_t i = 0; i < xs.size(); ++i)
    psi.row(static_cast<Eigen::Index>(i)) = basis_row(multi_indices, bounds, xs[i]).transpose();
  return psi;
}

Surrogate fit_vpce(std::span<const InputVector> xs, const Eigen::MatrixXd& outputs,
                   const PriorSpec& bounds, int degree) {
  bounds.validate();
  if (degree < 0) throw ConfigError("polynomial degree must be >= 0");
  if (outputs.cols() != static_cast<Eigen::Index>(xs.size()))
    throw ConfigError("fit_vpce: " + std::to_string(xs.size()) + " inputs but " +
                      std::to_string(outputs.cols()) + " output columns");
  if (!outputs.allFinite()) throw NumericalError("fit_vpce: non-finite design outputs");

  Surrogate s;
  s.bounds = bounds;
  s.degree = degree;
  s.multi_indices = total_degree_set(bounds.dim(), degree);
  const std::size_t P = s.multi_indices.size();
  if (xs.size() < P)
    throw ConfigError("fit_vpce: underdetermined design; degree " + std::to_string(degree) +
                      " in " + std::to_string(bounds.dim()) + " inputs needs at least " +
                      std::to_string(P) + " design points (" + std::to_string(2 * P) +
                      " recommended), got " + std::to_string(xs.size()));

  const Eigen::MatrixXd psi = design_matrix(s.multi_indices, bounds, xs);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(psi);
  qr.setThreshold(1e-10);
  if (qr.rank() < static_cast<Eigen::Index>(P)) {
    std::string cols;
    const auto& perm = qr.colsPermutation().indices();
    for (Eigen::Index k = qr.rank(); k < static_cast<Eigen::Index>(P); ++k) {
      if (!cols.empty()) cols += ' ';
      cols += to_string(s.multi_indices[static_cast<std::size_t>(perm[k])]);
    }
    throw NumericalError("fit_vpce: rank-deficient design (rank " + std::to_string(qr.rank()) +
                         " of " + std::to_string(P) + "); deficient basis columns: " + cols);
  }
  s.coeffs = qr.solve(outputs.transpose()).transpose();
  if (!s.coeffs.allFinite()) throw NumericalError("fit_vpce: non-finite coefficients");
  return s;
}

Surrogate fit_vpce(std::span<const InputVector> xs, const sim::Ensemble& ys,
                   const PriorSpec& bounds, int degree) {
  return fit_vpce(xs, ys.values, bounds, degree);
}

Prediction predict(const Surrogate& s, const InputVector& x) {
  check_dim(s.bounds, x);
  Prediction out;
  out.out_of_bounds = !s.bounds.contains(x);
  out.values = s.coeffs * basis_row(s.multi_indices, s.bounds, x);
  return out;
}

Eigen::MatrixXd predict_many(const Surrogate& s, std::span<const InputVector> xs) {
  for (const auto& x : xs) check_dim(s.bounds, x);
  Eigen::MatrixXd out(static_cast<Eigen::Index>(s.n_outputs()), static_cast<Eigen::Index>(xs.size()));
  parallel_for(xs.size(), [&](std::size_t i) {
    out.col(static_cast<Eigen::Index>(i)) = s.coeffs * basis_row(s.multi_indices, s.bounds, xs[i]);
  });
  return out;
}

}  // namespace clogfuse::surrogate
