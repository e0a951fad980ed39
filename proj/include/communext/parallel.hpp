#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace communext {

// Global worker count. 1 = fully serial; this is the reproducibility path,
// though all parallel loops below write disjoint outputs with a fixed
// per-element reduction order, so results are identical at any count.
inline std::atomic<int>& worker_count() {
  static std::atomic<int> n{1};
  return n;
}

inline void set_worker_count(int n) { worker_count() = n < 1 ? 1 : n; }

// Runs fn(begin, end) over [0, n) split into contiguous chunks.
inline void parallel_for(int64_t n, const std::function<void(int64_t, int64_t)>& fn) {
  int workers = worker_count();
  if (workers <= 1 || n < 2) {
    if (n > 0) fn(0, n);
    return;
  }
  if (workers > n) workers = static_cast<int>(n);
  std::vector<std::thread> threads;
  threads.reserve(static_cast<size_t>(workers) - 1);
  int64_t chunk = (n + workers - 1) / workers;
  for (int w = 1; w < workers; ++w) {
    int64_t b = w * chunk, e = std::min<int64_t>(n, b + chunk);
    if (b >= e) break;
    threads.emplace_back([&fn, b, e] { fn(b, e); });
  }
  fn(0, std::min<int64_t>(n, chunk));
  for (auto& t : threads) t.join();
}

}  // namespace communext
