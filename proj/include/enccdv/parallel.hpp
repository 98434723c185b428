#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace enccdv {

/// Worker count: explicit argument, else the ENCCDV_WORKERS environment
/// variable, else hardware concurrency.
int resolve_workers(int requested);

/// Runs fn(i) for i in [0, n) on a pool of workers.  Tasks must be pure up
/// to writing their own result slot; merge order is the task order, so
/// results are deterministic for any worker count.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  workers = resolve_workers(workers);
  if (n == 0) return;
  if (workers <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  pool.reserve(count);
  for (std::size_t t = 0; t < count; ++t) pool.emplace_back(run);
  for (auto& th : pool) th.join();
}

}  // namespace enccdv
