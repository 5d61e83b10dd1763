#include "clogfuse/surrogate/multi_index.hpp"

#include "clogfuse/util/error.hpp"

namespace clogfuse::surrogate {

std::size_t total_degree_size(std::size_t d, int p) {
  if (p < 0) throw ConfigError("polynomial degree must be >= 0");
  // C(d + p, p) built incrementally; every partial product is an integer.
  std::size_t c = 1;
  for (int k = 1; k <= p; ++k) c = c * (d + static_cast<std::size_t>(k)) / static_cast<std::size_t>(k);
  return c;
}

namespace {

void compositions(std::size_t var, int remaining, MultiIndex& current,
                  std::vector<MultiIndex>& out) {
  if (var + 1 == current.size()) {
    current[var] = remaining;
    out.push_back(current);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    current[var] = k;
    compositions(var + 1, remaining - k, current, out);
  }
}

}  // namespace

std::vector<MultiIndex> total_degree_set(std::size_t d, int p) {
  if (d == 0) throw ConfigError("multi-index set needs d >= 1");
  std::vector<MultiIndex> out;
  out.reserve(total_degree_size(d, p));
  MultiIndex current(d, 0);
  for (int degree = 0; degree <= p; ++degree) compositions(0, degree, current, out);
  return out;
}

std::string to_string(const MultiIndex& alpha) {
  std::string s = "(";
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (j) s += ',';
    s += std::to_string(alpha[j]);
  }
  return s + ")";
}

}  // namespace clogfuse::surrogate
