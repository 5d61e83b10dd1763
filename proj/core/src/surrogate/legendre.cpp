#include "clogfuse/surrogate/legendre.hpp"

namespace clogfuse::surrogate {

double legendre(int n, double x) noexcept {
  if (n <= 0) return 1.0;
  double p_prev = 1.0;
  double p = x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0) * x * p - k * p_prev) / (k + 1.0);
    p_prev = p;
    p = next;
  }
  return p;
}

void legendre_all(double x, std::span<double> out) noexcept {
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = x;
  for (std::size_t k = 1; k + 1 < out.size(); ++k) {
    const double kk = static_cast<double>(k);
    out[k + 1] = ((2.0 * kk + 1.0) * x * out[k] - kk * out[k - 1]) / (kk + 1.0);
  }
}

}  // namespace clogfuse::surrogate
