#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace clogfuse::rng {

using Engine = std::mt19937_64;

/// Stable 64-bit tag for a named stream (FNV-1a over the bytes).
std::uint64_t tag(std::string_view name) noexcept;

/// Independent engine whose state is a pure function of the seed and the
/// path. Used so that draw `i` of a stage never depends on how many draws
/// other members consumed, or on the order members are evaluated in.
Engine substream(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

/// Child seed for a named pipeline stage.
std::uint64_t derive(std::uint64_t seed, std::string_view stage);

}  // namespace clogfuse::rng
