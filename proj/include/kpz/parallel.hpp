#pragma once

#include <atomic>
#include <thread>
#include <vector>

// Replica parallelism: results indexed by replica, so aggregation order (and
// therefore every output artifact) is independent of scheduling.

namespace kpz {

template <typename Fn>
auto parallel_replicas(long long n, Fn&& fn) -> std::vector<decltype(fn(0ll))> {
  using R = decltype(fn(0ll));
  std::vector<R> out(static_cast<size_t>(n));
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (n < 4 || hw == 1) {
    for (long long i = 0; i < n; i++) out[static_cast<size_t>(i)] = fn(i);
    return out;
  }
  std::atomic<long long> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < hw; t++)
    pool.emplace_back([&] {
      while (true) {
        long long i = next.fetch_add(1);
        if (i >= n) break;
        out[static_cast<size_t>(i)] = fn(i);
      }
    });
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace kpz
