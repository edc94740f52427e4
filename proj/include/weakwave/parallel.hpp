#pragma once

#include <cstddef>
#include <functional>

namespace weakwave {

// Worker count: WEAKWAVE_THREADS when set to a positive integer (max 256),
// otherwise the hardware concurrency. Always at least 1.
unsigned worker_count();

// Runs body(begin, end) over contiguous chunks of [0, n) on up to `workers`
// threads. Chunk boundaries depend only on n and workers; callers write
// results by index so output order is independent of scheduling.
void parallel_for(std::size_t n, unsigned workers,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace weakwave
