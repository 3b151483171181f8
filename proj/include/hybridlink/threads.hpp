#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace hybridlink {

// Worker count: hardware concurrency, capped by HYBRIDLINK_THREADS if set.
inline int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("HYBRIDLINK_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, cap);
  }
  return n;
}

// Static partition over [0, count); results must be written to preassigned
// slots so output order is independent of scheduling.
inline void parallel_for(long count, const std::function<void(long)>& body) {
  const int workers = std::min<long>(worker_count(), count) > 0
                          ? static_cast<int>(std::min<long>(worker_count(), count))
                          : 1;
  if (workers <= 1) {
    for (long i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (long i = w; i < count; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace hybridlink
