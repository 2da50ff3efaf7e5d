#pragma once

#include <functional>

namespace armchair {

// Worker cap: ARMCHAIR_THREADS when set (minimum 1), otherwise the hardware
// concurrency.
int thread_cap();

// Runs fn(0..n-1) across at most thread_cap() workers. Callers store results
// by index, so output does not depend on scheduling. The first exception, if
// any, is rethrown after all workers join.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace armchair
