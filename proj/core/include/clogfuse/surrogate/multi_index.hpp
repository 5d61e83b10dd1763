#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace clogfuse::surrogate {

using MultiIndex = std::vector<int>;

/// C(d + p, p): size of the total-degree <= p set over d variables.
std::size_t total_degree_size(std::size_t d, int p);

/// All multi-indices over d variables with |alpha| <= p, graded by total
/// degree and, within a degree, in reverse lexicographic order (so the first
/// variable's powers come first). Index 0 is the constant term.
std::vector<MultiIndex> total_degree_set(std::size_t d, int p);

std::string to_string(const MultiIndex& alpha);

}  // namespace clogfuse::surrogate
