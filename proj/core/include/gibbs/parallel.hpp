#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace gibbs {

// Runs fn(i) for every i in [0, count) on up to `threads` workers.  Work
// items must write only to disjoint preallocated slots; callers reduce in
// index order afterwards, so results never depend on the thread count.
inline void parallel_for_index(int threads, std::int64_t count,
                               const std::function<void(std::int64_t)>& fn) {
  if (count <= 0) return;
  if (threads < 1) threads = 1;
  if (threads == 1 || count == 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  if (threads > count) threads = static_cast<int>(count);
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::int64_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& worker : pool) worker.join();
}

}  // namespace gibbs
