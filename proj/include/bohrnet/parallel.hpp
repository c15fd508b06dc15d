#pragma once

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace bohrnet {

// Runs fn(0..n-1) on up to `threads` workers. Callers are responsible for
// making fn(i) write only to slot i of any shared output, which keeps results
// independent of scheduling. The first exception is rethrown after join.
template <typename F>
void parallel_for(size_t n, int threads, F&& fn) {
  if (threads <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  const size_t workers = std::min<size_t>(static_cast<size_t>(threads), n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      size_t i;
      while (!failed.load(std::memory_order_relaxed) && (i = next.fetch_add(1)) < n) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          failed.store(true);
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace bohrnet
