#pragma once

#include <cstddef>
#include <functional>

namespace driftguard {

/// Worker count from DRIFTGUARD_THREADS, falling back to the hardware
/// concurrency. Always at least 1.
std::size_t configured_threads();

/// Calls body(i) for every i in [0, n) on up to `threads` workers. Work is
/// handed out by an atomic counter; callers must write results by index so
/// the outcome is independent of scheduling. The first exception thrown by
/// any body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t threads = configured_threads());

}  // namespace driftguard
