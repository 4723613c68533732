#pragma once

#include <cstdint>
#include <functional>

namespace medialcorr {

/// Effective worker count: `requested` if positive, else the
/// MEDIALCORR_THREADS environment variable, else the hardware concurrency
/// (at least 1).
int resolve_threads(int requested);

/// Runs fn(begin, end) over a contiguous partition of [0, total) on up to
/// `threads` workers. Callers must make per-index work independent of the
/// partition (counter-based RNG indexing does this for the samplers).
void parallel_for(std::int64_t total, int threads,
                  const std::function<void(std::int64_t, std::int64_t)>& fn);

}  // namespace medialcorr
