#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "clogfuse/data/observations.hpp"

namespace clogfuse::data {

/// Exact header of the observation CSV.
inline constexpr const char* kObservationHeader = "group,time_years,value,sigma";

/// Parses `group,time_years,value,sigma` rows, grouped contiguously by
/// label, into a validated Dataset in file order. Errors are DataError with
/// "<source>:<line>: ..." prefixes. A header-only input is an empty Dataset.
Dataset parse_observations(std::istream& in, const std::string& source = "<input>");
Dataset load_observations(const std::filesystem::path& path);

void write_observations(std::ostream& out, const Dataset& ds);
void save_observations(const std::filesystem::path& path, const Dataset& ds);

}  // namespace clogfuse::data
