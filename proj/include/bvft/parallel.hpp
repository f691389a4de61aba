#pragma once

#include <cstddef>
#include <functional>

namespace bvft {

/// Worker count: `requested` when positive, otherwise the hardware count.
int resolve_threads(int requested);

/// Runs fn(i) for i in [0, n) on up to `threads` workers.  Each index is
/// processed exactly once; the first exception thrown by any worker is
/// rethrown after all workers finish.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace bvft
