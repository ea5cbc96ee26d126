#pragma once

#include <cstddef>
#include <functional>

namespace qbm {

// Worker count from QBM_THREADS (0 or unset = hardware concurrency).
unsigned worker_count();

// Runs body(i) for i in [0, count) on worker_count() threads, in contiguous
// chunks. Each index is written by exactly one worker, so results stored by
// index are independent of the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace qbm
