#pragma once

#include <cstddef>
#include <cstdlib>
#include <thread>
#include <vector>

namespace mcz {

// Number of worker threads.  MCZ_THREADS overrides; 0 or unset means one
// thread per hardware core.
inline unsigned thread_count() {
  if (const char* env = std::getenv("MCZ_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? hc : 1;
}

// Runs fn(i) for i in [0, n).  Each index writes only its own outputs, so the
// result is identical for every thread count; there is no shared reduction.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const unsigned workers = thread_count();
  if (workers <= 1 || n < 2 * workers) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    if (lo >= n) break;
    const std::size_t hi = lo + chunk < n ? lo + chunk : n;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace mcz
