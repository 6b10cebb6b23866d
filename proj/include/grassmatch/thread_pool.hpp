#pragma once

#include <cstddef>
#include <functional>

namespace grassmatch {

// 0 means "use the hardware count".
unsigned effective_threads(unsigned requested);

// Runs fn(0) .. fn(count-1) on up to `threads` workers pulling from a shared
// counter. fn must be safe to call concurrently for distinct indices; the
// first exception thrown is rethrown on the calling thread after all workers
// finish.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

} // namespace grassmatch
