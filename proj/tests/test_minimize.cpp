#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "wallscale/error.hpp"
#include "wallscale/minimize.hpp"

using namespace wallscale;

namespace {
constexpr double pi = std::numbers::pi;
const double kE0 = 16.0 / std::sqrt(pi);

Profile1D rotate(const Profile1D& p, double theta) {
  std::vector<Vec3> v = p.values();
  for (Vec3& m : v) {
    const double a = m.m2 * std::cos(theta) - m.m3 * std::sin(theta);
    const double b = m.m2 * std::sin(theta) + m.m3 * std::cos(theta);
    m.m2 = a;
    m.m3 = b;
  }
  return Profile1D(p.half_length(), v);
}
}  // namespace

TEST_CASE("descent from the arc recovers the closed-form wall") {
  DescentConfig cfg;
  cfg.record_trace = true;
  const Profile1D init = arc_profile(20.0, 2049, 20.0);
  const DescentResult r = minimize_reduced(init, 1.0, cfg);
  CHECK(r.converged);
  CHECK(std::abs(r.energy - 4.0) / 4.0 < 0.01);
  CHECK(r.energy <= r.initial_energy);

  const RecenterReport rc = compare_recentered(r.profile, 1.0);
  CHECK(rc.max_deviation < 0.02);

  for (std::size_t k = 1; k < r.energy_history.size(); ++k) CHECK(r.energy_history[k] <= r.energy_history[k - 1]);
  CHECK(r.energy_history.size() == r.iterations + 1);
  for (const Vec3& m : r.profile.values()) CHECK(std::abs(norm(m) - 1.0) < 1e-12);
  CHECK(r.profile[0] == init[0]);
  CHECK(r.profile[2048] == init[2048]);

  REQUIRE(r.trace.size() == r.iterations + 1);
  std::ostringstream csv;
  write_trace_csv(csv, r.trace);
  std::istringstream in(csv.str());
  std::string header;
  std::getline(in, header);
  CHECK(header == "iteration,energy,grad_norm");
}

TEST_CASE("the exact minimizer is stationary") {
  const Profile1D exact = sample_wall({1.0, 1.0, 0.0}, 20.0, 2049).profile;
  const DescentResult r = minimize_reduced(exact, 1.0);
  CHECK(r.energy <= r.initial_energy);
  CHECK(r.initial_energy - r.energy < 1e-6);
}

TEST_CASE("descent on E_0") {
  const double L = 20.0 * std::sqrt(pi);
  const DescentResult r = minimize_reduced(arc_profile(L, 4097, L), ReducedEnergyWeights{});
  CHECK(std::abs(r.energy - kE0) / kE0 < 0.01);
  for (const Vec3& m : r.profile.values()) CHECK(m.m3 == 0.0);
  CHECK_FALSE(reduced_energy_E0(r.profile).is_infinite());

  const Profile1D tilted = rotate(arc_profile(L, 257, L), 0.3);
  CHECK_THROWS_AS(minimize_reduced(tilted, ReducedEnergyWeights{}), InvalidArgument);
}

TEST_CASE("rotation equivariance of the descent") {
  const Profile1D init = arc_profile(10.0, 257, 6.0);
  DescentConfig cfg;
  cfg.max_iters = 150;
  const DescentResult a = minimize_reduced(init, 2.0, cfg);
  const DescentResult b = minimize_reduced(rotate(init, 1.1), 2.0, cfg);
  CHECK_FALSE(a.converged);
  REQUIRE(a.energy_history.size() == b.energy_history.size());
  for (std::size_t k = 0; k < a.energy_history.size(); ++k)
    CHECK(std::abs(a.energy_history[k] - b.energy_history[k]) <= 1e-10);
}

TEST_CASE("discrete gradient against central differences") {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> noise(0.0, 0.2);
  const DiscreteEnergy energies[] = {alpha_energy(1.0), alpha_energy(3.0), ReducedEnergyWeights{}.energy()};
  for (const DiscreteEnergy& e : energies) {
    std::vector<Vec3> m = sample_wall({1.0, 1.0, 0.4}, 16.0, 129).profile.values();
    for (std::size_t i = 1; i + 1 < m.size(); ++i) m[i] = normalized(m[i] + Vec3{noise(rng), noise(rng), noise(rng)});
    const double h = 32.0 / 128.0;
    const std::vector<Vec3> g = e.gradient(m, h);
    for (std::size_t i = 0; i < m.size(); i += 7) {
      for (double Vec3::*c : {&Vec3::m1, &Vec3::m2, &Vec3::m3}) {
        const double step = 1e-5;
        std::vector<Vec3> up = m;
        std::vector<Vec3> dn = m;
        up[i].*c += step;
        dn[i].*c -= step;
        const double fd = (e.value(up, h) - e.value(dn, h)) / (2.0 * step);
        CHECK(std::abs(fd - g[i].*c) <= 1e-6 * std::max(1.0, std::abs(g[i].*c)));
      }
    }
  }
}

TEST_CASE("descent errors") {
  const Profile1D init = arc_profile(10.0, 65, 10.0);
  DescentConfig bad;
  bad.backtrack_factor = 1.0;
  CHECK_THROWS_AS(minimize_reduced(init, 1.0, bad), InvalidArgument);
  bad = {};
  bad.step = -1.0;
  CHECK_THROWS_AS(minimize_reduced(init, 1.0, bad), InvalidArgument);

  DescentConfig stall;
  stall.step = 1e6;
  stall.max_backtracks = 1;
  CHECK_THROWS_AS(minimize_reduced(init, 1.0, stall), NumericalError);

  DescentConfig capped;
  capped.max_iters = 5;
  const DescentResult r = minimize_reduced(init, 1.0, capped);
  CHECK(r.iterations == 5);
  CHECK_FALSE(r.converged);

  CHECK_THROWS_AS(arc_profile(10.0, 65, 0.0), InvalidArgument);
  std::vector<Vec3> flat(33, Vec3{1.0, 0.0, 0.0});
  CHECK_THROWS_AS(compare_recentered(Profile1D::unchecked(1.0, flat), 1.0), InvalidArgument);
}

TEST_CASE("recentering finds a shifted wall") {
  std::vector<Vec3> v(1025);
  const Profile1D grid = Profile1D::unchecked(20.0, v);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = eval_wall({1.0, 1.0, 0.5}, grid.x(i) - 0.37);
  v.front() = {-1.0, 0.0, 0.0};
  v.back() = {1.0, 0.0, 0.0};
  const RecenterReport r = compare_recentered(Profile1D(20.0, v), 1.0);
  CHECK(r.center == doctest::Approx(0.37).epsilon(1e-3));
  CHECK(r.theta == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.max_deviation < 1e-3);
}

TEST_CASE("ansatz search over the scaled family") {
  const CrossSection cs(1e-3, 1e-6);
  const double lnc = std::abs(std::log(cs.c()));
  const AnsatzSearchResult r = minimize_full_ansatz(cs);
  const double rhs = 200.0 / std::sqrt(lnc) + 20.0 * cs.l();
  CHECK(r.energy <= kE0 + rhs);
  CHECK(r.energy >= kE0 - rhs);
  CHECK(r.best_beta == 1.0);
  CHECK(r.evaluations == 9 + 2 + 30);
  CHECK(r.probes.size() == r.evaluations);
  for (const AnsatzProbe& p : r.probes) CHECK(r.energy <= p.energy);
  REQUIRE(r.breakdown.rescaled_upper.has_value());
  CHECK(*r.breakdown.rescaled_upper == r.energy);

  const double lambda = RescalingParams::of(cs).lambda;
  const AnsatzSearchResult single = minimize_full_ansatz(cs, {lambda});
  CHECK(single.evaluations == 1);
  CHECK(std::isfinite(single.energy));
  CHECK(single.energy >= r.energy);

  const AnsatzSearchResult thinner = minimize_full_ansatz(CrossSection(1e-3, 1e-9));
  CHECK(thinner.energy - kE0 < r.energy - kE0);

  CHECK_THROWS_AS(minimize_full_ansatz(CrossSection(1e-3, 1e-3)), InvalidArgument);
  CHECK_THROWS_AS(ansatz_profile(0.0, 65), InvalidArgument);
}
