#ifndef FRAGILE_CPR_PARALLEL_H_
#define FRAGILE_CPR_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fragile_cpr {

// Worker count: FRAGILE_CPR_THREADS if set to a positive integer, otherwise
// the hardware concurrency (at least 1).
inline int WorkerCount() {
  if (const char* env = std::getenv("FRAGILE_CPR_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Calls fn(i) for i in [0, count) on a pool of workers. Results must be
// written into per-index slots by fn; the first exception is rethrown.
template <class Fn>
void ParallelFor(int count, Fn&& fn, int workers = WorkerCount()) {
  if (count <= 0) return;
  workers = std::max(1, std::min(workers, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace fragile_cpr

#endif  // FRAGILE_CPR_PARALLEL_H_
