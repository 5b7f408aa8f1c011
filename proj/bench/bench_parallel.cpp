// Serial reference vs OpenMP kernels.
//   bench_parallel [threads]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <vector>

#include "wallscale/magnetostatics.hpp"
#include "wallscale/parallel.hpp"

using namespace wallscale;

namespace {

double seconds(const std::function<void()>& f, int repeats) {
  double best = INFINITY;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel, double diff) {
  std::printf("%-28s %10.4f %10.4f %8.2fx  max|diff| %.3g\n", name, serial, parallel, serial / parallel, diff);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) set_thread_count(std::atoi(argv[1]));
  std::printf("threads %d\n%-28s %10s %10s %9s\n", thread_count(), "kernel", "serial s", "parallel s", "speedup");

  {
    const CrossSection cs(1e-3, 1e-9);
    const double dk = 0.01;
    KernelTable s, p;
    const double ts = seconds([&] { s = KernelTable::build(cs, KernelTable::Kind::surface_m2, dk, 400, {}, Execution::serial); }, 3);
    const double tp = seconds([&] { p = KernelTable::build(cs, KernelTable::Kind::surface_m2, dk, 400, {}, Execution::parallel); }, 3);
    double diff = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) diff = std::max(diff, std::abs(s[j] - p[j]));
    row("kernel table I(d,l,k) x400", ts, tp, diff);
  }
  {
    const CrossSection cs(0.1, 0.05);
    const double dk = 0.05;
    KernelTable s, p;
    const double ts = seconds([&] { s = KernelTable::build(cs, KernelTable::Kind::volume, dk, 100, {}, Execution::serial); }, 3);
    const double tp = seconds([&] { p = KernelTable::build(cs, KernelTable::Kind::volume, dk, 100, {}, Execution::parallel); }, 3);
    double diff = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) diff = std::max(diff, std::abs(s[j] - p[j]));
    row("kernel table K_v x100", ts, tp, diff);
  }
  {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    std::vector<double> u(8193), t(8193);
    for (auto& x : u) x = g(rng);
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = 1.0 / (1.0 + static_cast<double>(k));
    double vs = 0.0, vp = 0.0;
    const double ts = seconds([&] { vs = par::toeplitz_form_serial(u, u, t); }, 3);
    const double tp = seconds([&] { vp = par::toeplitz_form_parallel(u, u, t); }, 3);
    row("toeplitz form n=8193", ts, tp, std::abs(vs - vp));
  }
  {
    const CrossSection cs(0.1, 0.05);
    const Profile1D w = sample_wall({1.0, 1.0, 0.0}, 20.0, 16385).profile;
    BoundaryOracleConfig s, p;
    s.exec = Execution::serial;
    double es = 0.0, ep = 0.0;
    const double ts = seconds([&] { es = e_s_boundary_oracle(w, cs, s).energy; }, 1);
    const double tp = seconds([&] { ep = e_s_boundary_oracle(w, cs, p).energy; }, 1);
    row("boundary oracle N=16385", ts, tp, std::abs(es - ep));
  }
  return 0;
}
