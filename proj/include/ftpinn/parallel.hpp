#pragma once

#include <cstddef>
#include <functional>

namespace ftpinn {

/// Number of hardware threads, at least 1.
unsigned hardware_threads();

/// Calls body(begin, end) over contiguous chunks of [0, count) on up to
/// `threads` workers. Chunk boundaries depend only on `count` and the worker
/// count, and each index is visited exactly once, so any per-index output is
/// independent of the degree of concurrency. The first exception thrown by a
/// worker is rethrown on the calling thread.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t begin, std::size_t end)>& body);

}  // namespace ftpinn
