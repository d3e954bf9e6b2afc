#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace unires {

/// Worker count from UNIRES_THREADS (default 1).
inline unsigned thread_count() {
  const char* s = std::getenv("UNIRES_THREADS");
  if (!s || !*s) return 1;
  try {
    int n = std::stoi(s);
    return n < 1 ? 1u : static_cast<unsigned>(n);
  } catch (...) {
    return 1;
  }
}

/// Calls fn(i) for 0 <= i < n on thread_count() workers. Callers write results into
/// per-index slots, so the outcome does not depend on scheduling.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  unsigned t = std::min<std::size_t>(thread_count(), n);
  if (t <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < t; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace unires
