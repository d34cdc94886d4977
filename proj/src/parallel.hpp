#pragma once
// Deterministic task parallelism: tasks pull indices from an atomic counter and
// write results into preallocated slots keyed by task index, so the outcome is
// independent of scheduling. Mutable accumulators (QueryCounter) must be
// per-worker and merged afterwards — merging is commutative addition.
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace sco {

// Global worker-count knob (0 = hardware concurrency). The CLI and C API set
// this once up front; changing it mid-run only affects subsequent calls.
inline std::atomic<int>& thread_count_state() {
  static std::atomic<int> v{0};
  return v;
}
inline int thread_count() {
  int v = thread_count_state().load(std::memory_order_relaxed);
  if (v > 0) return v;
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}
inline void set_thread_count(int n) {
  thread_count_state().store(n, std::memory_order_relaxed);
}

// Runs fn(task_index, worker_index) for every task in [0, n_tasks).
// worker_index < n_workers() indexes per-worker scratch/counters.
template <typename Fn>
void parallel_for(size_t n_tasks, int n_workers, Fn&& fn) {
  if (n_workers <= 1 || n_tasks <= 1) {
    for (size_t i = 0; i < n_tasks; ++i) fn(i, 0);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(n_workers));
  for (int w = 0; w < n_workers; ++w) {
    pool.emplace_back([&, worker = w] {
      for (;;) {
        size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= n_tasks) break;
        fn(i, worker);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace sco
