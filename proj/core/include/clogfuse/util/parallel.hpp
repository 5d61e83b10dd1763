#pragma once

#include <cstddef>
#include <functional>

namespace clogfuse {

/// Process-wide cap on worker threads. 0 means hardware concurrency.
void set_max_threads(unsigned n) noexcept;
unsigned max_threads() noexcept;

/// Runs body(i) for i in [0, n) across at most max_threads() workers.
/// body must only write to slot i of its outputs. The first exception thrown
/// by any worker is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace clogfuse
