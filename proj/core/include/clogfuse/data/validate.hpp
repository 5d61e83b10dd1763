#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "clogfuse/data/observations.hpp"
#include "clogfuse/sim/time_grid.hpp"

namespace clogfuse::data {

enum class IssueKind { out_of_span, duplicate_time, zero_noise };
std::string_view to_string(IssueKind k) noexcept;

struct ValidationIssue {
  IssueKind kind;
  std::size_t group = 0;
  std::size_t index = 0;  ///< observation index; 0 for group-level issues
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool empty() const noexcept { return issues.empty(); }
  bool has(IssueKind k) const noexcept;
};

/// Report-only checks against a grid. Zero-noise groups are flagged because
/// the ensemble smoother needs positive observation noise.
ValidationReport validate_dataset(const Dataset& ds, const sim::TimeGrid& grid);

}  // namespace clogfuse::data
