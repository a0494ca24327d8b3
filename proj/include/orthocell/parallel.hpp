#pragma once

// Deterministic data-parallel loop.  Work is split into contiguous index
// blocks, one per worker, so results written to slot i never depend on the
// thread count.  ORTHOCELL_THREADS overrides the worker count; 1 disables
// threading entirely.

#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace orthocell {

inline int thread_count() {
  if (const char* env = std::getenv("ORTHOCELL_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Calls f(i) for each i in [0, n).  f must only touch state owned by index i.
template <class F>
void parallel_for(std::size_t n, F&& f) {
  std::size_t workers = static_cast<std::size_t>(thread_count());
  if (workers > n) workers = n == 0 ? 1 : n;
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    std::size_t begin = n * t / workers;
    std::size_t end = n * (t + 1) / workers;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace orthocell
