#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace lorcomp {

// Worker count: LLCOMP_THREADS bounds it, default machine parallelism.
inline int worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  int n = hw == 0 ? 1 : static_cast<int>(hw);
  if (const char* env = std::getenv("LLCOMP_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) n = v;
  }
  return std::max(1, n);
}

// Runs fn(i) for i in [0, n) over contiguous chunks. Each item must write
// only to its own slot so the merge is order-independent.
inline void parallel_for(int n, const std::function<void(int)>& fn,
                         int max_threads = -1) {
  if (n <= 0) return;
  int threads = max_threads > 0 ? max_threads : worker_count();
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  int chunk = (n + threads - 1) / threads;
  for (int w = 0; w < threads; ++w) {
    int lo = w * chunk;
    int hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (int i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace lorcomp
