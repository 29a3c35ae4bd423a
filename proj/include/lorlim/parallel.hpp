#pragma once

#include <cstddef>
#include <functional>

namespace lorlim {

/// Worker cap: LORLIM_THREADS if set and positive, else hardware concurrency.
std::size_t worker_count();

/// Runs fn(begin, end) over contiguous chunks of [0, n). Chunk boundaries
/// depend only on n and the worker count, never on timing.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace lorlim
