#pragma once

#include <cstddef>
#include <functional>

namespace boxrevive {

/// Worker count used by `parallel_for`. Defaults to BOXREVIVE_THREADS when set
/// to a positive integer, otherwise the hardware concurrency.
int thread_count();

/// Overrides the worker count for the current process; 0 restores the default.
void set_thread_count(int n);

/// Runs body(i) for i in [0, n). Indices are split into contiguous blocks, one
/// per worker; every index is visited exactly once and body must only write
/// state owned by its index.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace boxrevive
