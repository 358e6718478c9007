#pragma once

#include <cstddef>
#include <functional>

namespace memkin {

// 0 means: MEMKIN_THREADS if set, else hardware concurrency.
void set_thread_count(int n);
int thread_count();

// Runs f(i) for i in [0, n) on a static partition. Each index must write only its own
// output slot, which keeps results independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

}  // namespace memkin
