#pragma once

#include <cstddef>
#include <functional>

namespace tiling {

/// Worker count: hardware concurrency, capped by TILETOOL_THREADS when set.
unsigned thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads. Callers
/// write results into per-index slots and reduce afterwards in index order,
/// so output is independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace tiling
