#pragma once

#include <cstddef>
#include <functional>

namespace steklov {

// Worker count: STEKLOV_THREADS if set (minimum 1), else the logical core
// count.
std::size_t worker_count();

// Run fn(i) for i in [0, n) on up to worker_count() threads. Each index owns
// its output slot, so results are deterministic regardless of scheduling.
// Exceptions are captured and the first one (by index) is rethrown.
void parallel_for_indices(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace steklov
