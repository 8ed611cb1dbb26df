#pragma once

#include <cstddef>
#include <functional>

namespace swarmsim {

// Worker count for parallel sections: SWARMSIM_WORKERS when set, otherwise
// hardware concurrency. Only affects scheduling, never results.
unsigned worker_count();

// Runs fn(i) for i in [0, n) on a bounded set of worker threads. Each index
// runs exactly once; the first exception is rethrown after all workers join.
// Callers make work units independent and reduce results in a fixed order, so
// outputs do not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace swarmsim
