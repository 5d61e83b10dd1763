#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "clogfuse/prognostics/rul.hpp"

namespace clogfuse::prognostics {

/// `member,duration_years,censored`; censored rows leave the duration empty.
void write_rul_csv(std::ostream& out, const RulDistribution& rd);
void write_rul_csv(const std::filesystem::path& path, const RulDistribution& rd);

/// JSON summary. The present time, when given, is carried along as a
/// display marker only.
std::string summary_to_json(const RulSummary& s, const RulQuery& q,
                            std::optional<double> present_time);

}  // namespace clogfuse::prognostics
