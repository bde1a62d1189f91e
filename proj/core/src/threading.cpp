#include "polycap/threading.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace polycap {

namespace {
std::atomic<int> g_threads{0};
}

void set_threads(int n) { g_threads.store(n < 0 ? 0 : n); }

int effective_threads() {
  const int req = g_threads.load();
  const int hw = std::max(1u, std::thread::hardware_concurrency());
  return req == 0 ? hw : std::min(req, 4 * hw);
}

void parallel_for_rows(int count, const std::function<void(int, int)>& fn) {
  const int nt = std::min(effective_threads(), count);
  if (nt <= 1) {
    fn(0, count);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  const int chunk = (count + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    const int begin = t * chunk;
    const int end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(fn, begin, end);
  }
  for (auto& th : pool) th.join();
}

}  // namespace polycap
