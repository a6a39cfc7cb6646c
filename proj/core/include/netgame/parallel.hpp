#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace netgame {

// worker cap: NETGAME_THREADS if set (>=1), else hardware concurrency
inline int worker_count() {
  if (const char* env = std::getenv("NETGAME_THREADS")) {
    int k = std::atoi(env);
    if (k >= 1) return k;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// run fn(i) for i in [0, count); partitioning never affects results as long
// as fn(i) only writes to slot i of whatever it fills in
inline void parallel_for(int count, const std::function<void(int)>& fn) {
  int workers = worker_count();
  if (workers <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  if (workers > count) workers = count;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace netgame
