#include "clogfuse/sim/ensemble.hpp"

#include "clogfuse/util/error.hpp"

namespace clogfuse::sim {

std::string_view to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::prior: return "prior";
    case Provenance::bmu: return "bmu";
    case Provenance::enks: return "enks";
  }
  return "unknown";
}

DegradationTrajectory Ensemble::member(std::size_t i) const {
  const auto col = static_cast<Eigen::Index>(i);
  return {grid, values.col(col), marks, pre_cleaning.col(col)};
}

Ensemble make_ensemble(const std::vector<DegradationTrajectory>& members,
                       Provenance provenance) {
  if (members.empty()) throw ConfigError("ensemble: needs at least one member");
  const auto& first = members.front();
  const auto T = static_cast<Eigen::Index>(first.grid.size());
  const auto C = static_cast<Eigen::Index>(first.marks.size());
  const auto N = static_cast<Eigen::Index>(members.size());

  Ensemble ens{first.grid, first.marks, Eigen::MatrixXd(T, N), Eigen::MatrixXd(C, N),
               std::nullopt, provenance};
  for (Eigen::Index i = 0; i < N; ++i) {
    const auto& m = members[static_cast<std::size_t>(i)];
    if (!(m.grid == first.grid) || m.marks != first.marks)
      throw ConfigError("ensemble: member " + std::to_string(i) +
                        " does not share the grid and cleaning marks");
    ens.values.col(i) = m.values;
    ens.pre_cleaning.col(i) = m.pre_cleaning;
  }
  return ens;
}

}  // namespace clogfuse::sim
