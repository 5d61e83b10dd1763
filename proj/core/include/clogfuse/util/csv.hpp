#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace clogfuse::csv {

/// 17 significant digits; parses back to exactly the same double.
std::string format_double(double v);

/// Splits one line on commas. No quoting support; none of the schemas need it.
std::vector<std::string_view> split(std::string_view line);

/// Parses a whole field as a double; false if anything is left over.
bool parse_double(std::string_view field, double& out);

std::string_view trim(std::string_view s);

}  // namespace clogfuse::csv
