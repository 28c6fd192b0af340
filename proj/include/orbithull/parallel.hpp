#pragma once

#include <cstddef>
#include <functional>

namespace orbithull {

// Thread count from ORBITHULL_THREADS, else min(hardware_concurrency, 8).
std::size_t thread_count();

// Runs body(i) for i in [0, count) across threads. Work items may only write
// to their own index slot, so results are independent of scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace orbithull
