#include "clogfuse/data/validate.hpp"

#include <sstream>

namespace clogfuse::data {

std::string_view to_string(IssueKind k) noexcept {
  switch (k) {
    case IssueKind::out_of_span: return "out_of_span";
    case IssueKind::duplicate_time: return "duplicate_time";
    case IssueKind::zero_noise: return "zero_noise";
  }
  return "unknown";
}

bool ValidationReport::has(IssueKind k) const noexcept {
  for (const auto& i : issues)
    if (i.kind == k) return true;
  return false;
}

ValidationReport validate_dataset(const Dataset& ds, const sim::TimeGrid& grid) {
  ValidationReport report;
  for (std::size_t g = 0; g < ds.groups.size(); ++g) {
    const auto& group = ds.groups[g];
    if (group.sigma == 0.0 && group.size() > 0)
      report.issues.push_back({IssueKind::zero_noise, g, 0,
                               "group '" + group.label + "' has sigma = 0; the smoother needs positive noise"});
    for (std::size_t i = 0; i < group.size(); ++i) {
      const double t = group.times[i];
      if (!grid.contains(t)) {
        std::ostringstream msg;
        msg << "group '" << group.label << "' observation " << i << " at t=" << t
            << " outside grid span [" << grid.front() << ", " << grid.back() << "]";
        report.issues.push_back({IssueKind::out_of_span, g, i, msg.str()});
      }
      for (std::size_t k = 0; k < i; ++k) {
        if (group.times[k] == t) {
          std::ostringstream msg;
          msg << "group '" << group.label << "' observations " << k << " and " << i
              << " share t=" << t;
          report.issues.push_back({IssueKind::duplicate_time, g, i, msg.str()});
          break;
        }
      }
    }
  }
  return report;
}

}  // namespace clogfuse::data
