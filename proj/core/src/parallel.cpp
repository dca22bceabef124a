#include "mlfc/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mlfc {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  const std::size_t t = std::min<std::size_t>(static_cast<std::size_t>(resolve_threads(threads)), n);
  if (t <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::mutex mu;
  std::exception_ptr first;
  std::size_t first_index = n;
  std::atomic<bool> stop{false};
  auto worker = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end && !stop.load(std::memory_order_relaxed); ++i) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (i < first_index) {
          first_index = i;
          first = std::current_exception();
        }
        stop = true;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(t);
  const std::size_t block = (n + t - 1) / t;
  for (std::size_t k = 0; k < t; ++k) {
    std::size_t b = k * block, e = std::min(n, b + block);
    if (b >= e) break;
    pool.emplace_back(worker, b, e);
  }
  for (auto& th : pool) th.join();
  if (first) std::rethrow_exception(first);
}

}  // namespace mlfc
