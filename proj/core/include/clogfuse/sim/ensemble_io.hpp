#pragma once

#include <filesystem>
#include <iosfwd>

#include "clogfuse/sim/ensemble.hpp"

namespace clogfuse::sim {

/// Wide CSV: header `time,member_0,...,member_{N-1}`, one row per grid time,
/// values as fractions with 17 significant digits.
void write_ensemble_csv(std::ostream& out, const Ensemble& ens);
void write_ensemble_csv(const std::filesystem::path& path, const Ensemble& ens);

}  // namespace clogfuse::sim
