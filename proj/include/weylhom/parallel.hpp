#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace weylhom {

// Thread budget for data-parallel sections: the WEYLHOM_THREADS environment
// variable, else 1. Exact arithmetic makes every reduction order-independent,
// so the thread count never changes a result.
inline int default_thread_count() {
  if (const char* env = std::getenv("WEYLHOM_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

template <class F>
inline void parallel_for(int nitems, int nthreads, F&& fn) {
  if (nthreads <= 1 || nitems <= 1) {
    for (int i = 0; i < nitems; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    try {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= nitems) return;
        fn(i);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  const int k = std::min(nthreads, nitems);
  pool.reserve(static_cast<std::size_t>(k - 1));
  for (int t = 1; t < k; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace weylhom
