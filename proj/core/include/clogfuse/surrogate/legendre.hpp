#pragma once

#include <span>

namespace clogfuse::surrogate {

/// Legendre polynomial P_n(x) (standard normalisation, P_n(1) = 1).
double legendre(int n, double x) noexcept;

/// Fills out[k] = P_k(x) for k = 0..out.size()-1 via the three-term
/// recurrence.
void legendre_all(double x, std::span<double> out) noexcept;

}  // namespace clogfuse::surrogate
