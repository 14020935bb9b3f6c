#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <utility>
#include <vector>

namespace abg {

/// Worker count: set_thread_count() if called, else ABG_THREADS, else the
/// hardware concurrency.
int thread_count();
void set_thread_count(int threads);

/// Splits [0, n) into `parts` contiguous ranges (fewer when n is small).
/// The split depends only on n and parts, never on the worker count, so
/// per-range results merged in range order are deterministic.
std::vector<std::pair<std::size_t, std::size_t>> split_range(std::size_t n, std::size_t parts);

/// Calls fn(i) for i in [0, tasks) on up to thread_count() workers. The first
/// exception thrown by any task is rethrown after all workers stop.
void parallel_tasks(std::size_t tasks, const std::function<void(std::size_t)>& fn);

} // namespace abg
