#pragma once

#include <cstddef>
#include <functional>

namespace simlearn {

/// Effective worker count: min(SIMLEARN_THREADS, hardware concurrency), at
/// least 1. SIMLEARN_THREADS unset or 0 means "use the hardware count".
int worker_count();

/// Runs fn(chunk_index, begin, end) over [0, n) split into fixed chunks of
/// `chunk` items. Chunks are distributed over worker threads; the chunk grid
/// itself never depends on the thread count, so callers that reduce per-chunk
/// results in chunk order are bit-reproducible for any SIMLEARN_THREADS.
void for_each_chunk(std::size_t n, std::size_t chunk,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

}  // namespace simlearn
