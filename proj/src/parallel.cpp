#include "memkin/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace memkin {

namespace {
std::atomic<int> g_threads{0};
thread_local bool t_in_region = false;
}

void set_thread_count(int n) { g_threads = std::max(0, n); }

int thread_count() {
    int n = g_threads;
    if (n > 0) return n;
    if (const char* env = std::getenv("MEMKIN_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f) {
    std::size_t t = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n);
    // nested calls run inline on the worker that issued them
    if (t <= 1 || t_in_region) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::exception_ptr first;
    std::size_t first_index = n;
    std::mutex mu;
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (std::size_t k = 0; k < t; ++k) {
        std::size_t lo = n * k / t, hi = n * (k + 1) / t;
        pool.emplace_back([&, lo, hi] {
            t_in_region = true;
            for (std::size_t i = lo; i < hi; ++i) {
                try {
                    f(i);
                } catch (...) {
                    // keep the lowest failing index so errors are reproducible
                    std::lock_guard<std::mutex> lock(mu);
                    if (i < first_index) {
                        first_index = i;
                        first = std::current_exception();
                    }
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first) std::rethrow_exception(first);
}

}  // namespace memkin
