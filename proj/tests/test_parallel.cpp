#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "wallscale/error.hpp"
#include "wallscale/parallel.hpp"

using namespace wallscale;

TEST_CASE("map: parallel equals serial bit for bit") {
  auto f = [](std::size_t i) { return std::sin(0.1 * static_cast<double>(i)) / (1.0 + i); };
  const auto s = par::map_serial(1000, f);
  const auto p = par::map_parallel(1000, f);
  CHECK(s == p);
  CHECK(par::map(1000, f, Execution::parallel) == s);
}

TEST_CASE("map: exceptions propagate") {
  auto f = [](std::size_t i) -> double {
    if (i == 17) throw std::runtime_error("boom");
    return 1.0;
  };
  CHECK_THROWS_AS(par::map_parallel(64, f), std::runtime_error);
}

TEST_CASE("toeplitz form: parallel matches serial") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  std::vector<double> u(301), v(301), t(301);
  for (auto& x : u) x = g(rng);
  for (auto& x : v) x = g(rng);
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = 1.0 / (1.0 + k);
  const double s = par::toeplitz_form_serial(u, v, t);
  const double p = par::toeplitz_form_parallel(u, v, t);
  CHECK(std::abs(s - p) <= 1e-12 * (1.0 + std::abs(s)));
  for (int threads : {1, 2, 3}) {
    set_thread_count(threads);
    CHECK(par::toeplitz_form_parallel(u, v, t) == p);
  }
  set_thread_count(0);
  CHECK_THROWS_AS(par::toeplitz_form_serial(u, v, std::vector<double>(3)), InvalidArgument);
  CHECK_THROWS_AS(set_thread_count(-1), InvalidArgument);
}
