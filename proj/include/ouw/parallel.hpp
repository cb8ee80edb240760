#pragma once
// minimal path-parallel loop: fn(i) may only touch slot-i state, so results
// are deterministic regardless of thread count

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace ouw {

inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                         unsigned n_threads = 0) {
  if (n == 0) return;
  if (n_threads == 0) {
    unsigned hw = std::thread::hardware_concurrency();
    n_threads = hw == 0 ? 1 : hw;
  }
  if (n_threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  unsigned spawn = n_threads < n ? n_threads : static_cast<unsigned>(n);
  pool.reserve(spawn);
  for (unsigned w = 0; w < spawn; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace ouw
