#include "clogfuse/sim/ensemble_io.hpp"

#include <fstream>
#include <ostream>

#include "clogfuse/util/csv.hpp"
#include "clogfuse/util/error.hpp"

namespace clogfuse::sim {

void write_ensemble_csv(std::ostream& out, const Ensemble& ens) {
  out << "time";
  for (std::size_t i = 0; i < ens.size(); ++i) out << ",member_" << i;
  out << '\n';
  for (std::size_t j = 0; j < ens.grid.size(); ++j) {
    out << csv::format_double(ens.grid[j]);
    const auto row = ens.values.row(static_cast<Eigen::Index>(j));
    for (Eigen::Index i = 0; i < row.size(); ++i) out << ',' << csv::format_double(row[i]);
    out << '\n';
  }
}

void write_ensemble_csv(const std::filesystem::path& path, const Ensemble& ens) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_ensemble_csv(out, ens);
}

}  // namespace clogfuse::sim
