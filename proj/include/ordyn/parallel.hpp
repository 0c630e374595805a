#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ordyn {

/// Evaluates fn(i) for i in [0, n) on up to `workers` threads and returns
/// the results in index order.  fn must be a pure function of i.  The first
/// exception thrown by any worker is rethrown on the calling thread.
template <class R, class Fn>
std::vector<R> parallel_map(std::size_t n, int workers, Fn&& fn) {
  std::vector<R> out(n);
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  const std::size_t nt = std::min<std::size_t>(workers, n);
  std::exception_ptr error;
  std::mutex error_mx;
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    pool.emplace_back([&, t]() {
      try {
        for (std::size_t i = t; i < n; i += nt) out[i] = fn(i);
      } catch (...) {
        std::scoped_lock lk(error_mx);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace ordyn
