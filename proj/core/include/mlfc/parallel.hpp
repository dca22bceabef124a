#pragma once

#include <cstddef>
#include <functional>

namespace mlfc {

// 0 means "all hardware threads"; the result is at least 1.
int resolve_threads(int requested);

// Runs fn(i) for i in [0, n) on up to `threads` threads. Work is split into
// contiguous blocks, so each index always runs exactly once; callers write
// results by index and reduce afterwards in index order. After a failure the
// remaining work is abandoned and the lowest failing index seen is rethrown.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace mlfc
