#include "theta/core.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>

namespace theta {

int worker_threads() {
  static const int n = [] {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("THETA_SWEEP_THREADS")) {
      const int cap = std::atoi(env);
      if (cap > 0) hw = std::min(hw, cap);
    }
    return hw;
  }();
  return n;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  const int workers = std::min(worker_threads(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace theta
