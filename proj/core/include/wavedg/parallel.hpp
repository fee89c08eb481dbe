#pragma once

#include <cstddef>
#include <functional>

namespace wavedg {

/// Worker count: hardware concurrency, capped by the WAVEDG_THREADS environment variable.
int thread_count();

/// Runs body(i) for i in [0, n). Work is split into contiguous chunks, one per
/// thread, so every index is handled by exactly one worker and the result does
/// not depend on scheduling. Nested calls run serially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace wavedg
