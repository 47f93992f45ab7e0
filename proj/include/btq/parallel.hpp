#pragma once

#include <cstddef>
#include <functional>

namespace btq {

// Upper bound on worker threads used by library searches (default: hardware
// concurrency, at least 1).
void set_thread_count(int n);
int thread_count();

// Runs body(k) for k in [0, n) on up to thread_count() threads. Callers write
// into per-index slots so the merged result does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace btq
