#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace hypsig {

// Number of worker threads: explicit request, else HYPSIG_THREADS, else 1.
int default_thread_count();

// Static partition of [begin, end) over n_threads; body(first, last) must be
// independent across chunks.  Falls back to inline execution for one thread.
template <typename Body>
void parallel_for_ranges(int begin, int end, int n_threads, const Body& body) {
  const int count = end - begin;
  if (count <= 0) return;
  n_threads = std::clamp(n_threads, 1, count);
  if (n_threads == 1) {
    body(begin, end);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(n_threads);
  const int chunk = (count + n_threads - 1) / n_threads;
  for (int t = 0; t < n_threads; ++t) {
    const int lo = begin + t * chunk;
    const int hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& w : workers) w.join();
}

}  // namespace hypsig
