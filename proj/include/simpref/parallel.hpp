#pragma once

#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace simpref {

/// Worker count, overridable through the SIMPREF_THREADS environment
/// variable. Unset, non-numeric or non-positive values mean 1.
inline unsigned thread_count() {
  const char* env = std::getenv("SIMPREF_THREADS");
  if (env == nullptr) return 1;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (end == env || n <= 0) return 1;
  return n > 64 ? 64u : static_cast<unsigned>(n);
}

/// Evaluates fn(i) for i in [0, n) and stores results by index.
/// Work is split into contiguous index chunks, one per thread, so the
/// output is bitwise identical for every thread count; any reduction a
/// caller performs over the returned vector must itself use a fixed
/// index order. A throwing fn rethrows the exception of the lowest
/// chunk after all workers have joined.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& fn) {
  std::vector<T> out(n);
  const unsigned threads = thread_count();
  if (threads <= 1 || n < 128) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  const std::size_t chunk = (n + threads - 1) / threads;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t lo = t * chunk;
    if (lo >= n) break;
    const std::size_t hi = lo + chunk < n ? lo + chunk : n;
    pool.emplace_back([&out, &fn, &errors, t, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) out[i] = fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
  return out;
}

namespace detail {

/// Neumaier-compensated sequential sum; deterministic left-to-right order.
template <typename It>
double compensated_sum(It first, It last) {
  double sum = 0.0;
  double comp = 0.0;
  for (It it = first; it != last; ++it) {
    const double x = *it;
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace detail
}  // namespace simpref
