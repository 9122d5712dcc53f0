#pragma once

#include <cstddef>
#include <functional>

namespace cchaos {

/// Worker count used when a caller passes 0.
unsigned default_threads();

/// Calls body(begin, end) on contiguous, disjoint chunks of [0, count).
/// Chunk boundaries depend only on count and the number of chunks, so any
/// body that writes only its own range is deterministic for every thread
/// count. Exceptions from workers are rethrown on the calling thread.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace cchaos
