#pragma once

#include <thread>
#include <vector>

namespace dop {

inline int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(begin, end) over a partition of [0, n). With one worker, runs
// inline. Workers get contiguous chunks; results must not depend on the
// partition (callers write disjoint slots).
template <typename Fn>
void parallel_for(long n, int threads, Fn&& fn) {
  threads = resolve_threads(threads);
  if (threads <= 1 || n < 2048) {
    fn(0L, n);
    return;
  }
  if (threads > n) threads = static_cast<int>(n);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  const long chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const long lo = t * chunk;
    const long hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace dop
