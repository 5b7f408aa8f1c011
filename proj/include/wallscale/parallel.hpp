#pragma once

// Data-parallel building blocks. Every parallel kernel here has a serial
// reference next to it; tests compare the two and the benchmark times them.
//
// Reductions are order-fixed (per-item partials, then a serial sum in index
// order), so results do not depend on the thread count.

#include <cstddef>
#include <exception>
#include <mutex>
#include <span>
#include <vector>

#include <omp.h>

namespace wallscale {

enum class Execution { serial, parallel };

/// 0 restores the OpenMP default (all available hardware threads).
void set_thread_count(int threads);
int thread_count();

namespace par {

/// out[i] = f(i) for i in [0, n).
template <class F>
std::vector<double> map_serial(std::size_t n, F&& f) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
  return out;
}

/// Same as map_serial; items are evaluated concurrently. The first exception
/// thrown by any item is rethrown after the loop.
template <class F>
std::vector<double> map_parallel(std::size_t n, F&& f) {
  std::vector<double> out(n);
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

template <class F>
std::vector<double> map(std::size_t n, F&& f, Execution exec) {
  return exec == Execution::parallel ? map_parallel(n, std::forward<F>(f))
                                     : map_serial(n, std::forward<F>(f));
}

/// sum_{i,j} u[i] * v[j] * t[|i - j|]; naive double loop, the reference.
double toeplitz_form_serial(std::span<const double> u, std::span<const double> v,
                            std::span<const double> t);

/// Same quadratic form, rows distributed over threads and reduced in row order.
double toeplitz_form_parallel(std::span<const double> u, std::span<const double> v,
                              std::span<const double> t);

double toeplitz_form(std::span<const double> u, std::span<const double> v,
                     std::span<const double> t, Execution exec);

}  // namespace par
}  // namespace wallscale
