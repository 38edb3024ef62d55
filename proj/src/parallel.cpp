#include "rsc/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace rsc {

size_t thread_cap() {
  size_t hw = std::max<size_t>(1, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("RSC_THREADS")) {
    try {
      long v = std::stol(env);
      if (v >= 1) return std::min(hw, static_cast<size_t>(v));
    } catch (const std::exception&) {
      // unparsable values fall back to the hardware count
    }
  }
  return hw;
}

void parallel_for(size_t n, const std::function<void(size_t)>& body) {
  size_t workers = std::min(thread_cap(), n);
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr first;
  std::mutex guard;
  auto run = [&] {
    for (size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(guard);
        if (!first) first = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

}  // namespace rsc
