#pragma once

#include <cstddef>
#include <functional>

namespace bigres {

/// Worker count: BIGRES_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Calls fn(i) for every i in [0, n) on up to worker_count() threads. Work is
/// handed out through a shared counter; the first exception thrown by any
/// task is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace bigres
