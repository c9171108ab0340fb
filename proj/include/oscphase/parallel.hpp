#pragma once

#include <cstddef>
#include <functional>

namespace oscphase {

// Worker count: OSCPHASE_THREADS if set to a positive integer, else the
// hardware concurrency, never more than n.
std::size_t worker_count(std::size_t n);

// Runs fn(i) for i < n on up to worker_count(n) threads. Results must be
// written to per-index slots by fn; the first exception (lowest index) is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace oscphase
