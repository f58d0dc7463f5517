#pragma once

#include <cstdint>
#include <functional>

namespace flatlab {

// Worker cap: FLATLAB_THREADS environment variable when set (and >= 1),
// otherwise std::thread::hardware_concurrency().
int worker_count();

// Runs fn(i) for every i in [0, n) using a static block partition over
// `threads` workers (threads <= 0 means worker_count()). Results must be
// written to per-index slots; no ordering between indices is guaranteed, so
// callers needing deterministic reductions combine the slots afterwards in
// index order. The first exception thrown by any worker is rethrown.
void parallel_for_index(std::int64_t n, int threads,
                        const std::function<void(std::int64_t)>& fn);

}  // namespace flatlab
