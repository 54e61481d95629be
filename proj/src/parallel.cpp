#include "paraairy/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace paraairy {

namespace {
int g_threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void set_thread_count(int n) { g_threads = std::max(1, n); }

int thread_count() { return g_threads; }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const int workers = std::min<std::size_t>(g_threads, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  // Rethrow the lowest-index failure so error reporting is deterministic.
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace paraairy
