#include "wallscale/parallel.hpp"

#include "wallscale/error.hpp"

namespace wallscale {

namespace {
int default_threads() {
  static const int n = omp_get_max_threads();
  return n;
}
}  // namespace

void set_thread_count(int threads) {
  if (threads < 0) throw InvalidArgument("thread count must be >= 0");
  omp_set_num_threads(threads == 0 ? default_threads() : threads);
}

int thread_count() { return omp_get_max_threads(); }

namespace par {

namespace {
void check_sizes(std::span<const double> u, std::span<const double> v, std::span<const double> t) {
  if (u.size() != v.size() || t.size() < u.size())
    throw InvalidArgument("toeplitz form: inconsistent vector sizes");
}

double row_sum(std::span<const double> v, std::span<const double> t, std::size_t i) {
  double acc = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) acc += v[j] * t[i > j ? i - j : j - i];
  return acc;
}
}  // namespace

double toeplitz_form_serial(std::span<const double> u, std::span<const double> v,
                            std::span<const double> t) {
  check_sizes(u, v, t);
  double total = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) total += u[i] * v[j] * t[i > j ? i - j : j - i];
  return total;
}

double toeplitz_form_parallel(std::span<const double> u, std::span<const double> v,
                              std::span<const double> t) {
  check_sizes(u, v, t);
  std::vector<double> rows(u.size(), 0.0);
  const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    rows[k] = u[k] == 0.0 ? 0.0 : u[k] * row_sum(v, t, k);
  }
  double total = 0.0;
  for (double r : rows) total += r;
  return total;
}

double toeplitz_form(std::span<const double> u, std::span<const double> v,
                     std::span<const double> t, Execution exec) {
  return exec == Execution::parallel ? toeplitz_form_parallel(u, v, t)
                                     : toeplitz_form_serial(u, v, t);
}

}  // namespace par
}  // namespace wallscale
