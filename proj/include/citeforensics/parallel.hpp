#pragma once

#include <cstddef>
#include <functional>

namespace citeforensics {

/// Worker count for parallel sections: `requested` (<=0 means hardware
/// concurrency), capped by the CITEFORENSICS_THREADS environment variable
/// when set to a positive integer. Always >= 1.
int effective_thread_count(int requested = 0);

/// Runs fn(chunk_index, begin, end) over [0, count) split into fixed-size
/// chunks. Chunk boundaries depend only on (count, chunk_size), never on the
/// number of workers, so callers that store per-chunk results and merge them
/// in chunk order get identical output for any thread count.
void parallel_for_chunks(std::size_t count, std::size_t chunk_size, int threads,
                         const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

}  // namespace citeforensics
