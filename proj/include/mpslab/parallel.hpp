#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace mpslab {

/// Worker cap from MPSLAB_THREADS (unset or 0 means hardware concurrency).
std::size_t worker_count();

/// Runs fn(i) for i in [0, n) on up to worker_count() threads. Results must be
/// written to per-index slots; the first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace mpslab
