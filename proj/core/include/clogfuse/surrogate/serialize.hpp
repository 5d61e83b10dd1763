#pragma once

#include <filesystem>
#include <string>

#include "clogfuse/surrogate/vpce.hpp"

namespace clogfuse::surrogate {

inline constexpr int kSurrogateFormatVersion = 1;

/// JSON document: format tag, version, degree, bounds, multi-index list and
/// the coefficient matrix (row per output). Doubles are written in their
/// shortest round-trip form, so save -> load reproduces every bit.
std::string to_json(const Surrogate& s);
Surrogate surrogate_from_json(const std::string& text);

void save(const Surrogate& s, const std::filesystem::path& path);
Surrogate load_surrogate(const std::filesystem::path& path);

}  // namespace clogfuse::surrogate
