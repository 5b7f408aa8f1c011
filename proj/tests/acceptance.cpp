// Acceptance gate: one PASS/FAIL line per criterion.
//   acceptance [--strict]
// Exit status is 0 when every failure is a documented known failure; with
// --strict any failure gives 1.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "wallscale/error.hpp"
#include "wallscale/format.hpp"
#include "wallscale/golden.hpp"
#include "wallscale/kernels.hpp"
#include "wallscale/lab.hpp"
#include "wallscale/magnetostatics.hpp"
#include "wallscale/minimize.hpp"
#include "wallscale/quad.hpp"
#include "wallscale/walls.hpp"

using namespace wallscale;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + ("failed: " + what);
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Criteria that fail for a reason recorded in the decisions notes.
const std::set<int> kKnownFailures = {6};
const char* const kKnownReason[] = {
    "", "", "", "", "", "",
    "a_100 = 1.54027043; pi/2 - a_100 = a_0.01 = 0.0305 exactly, so 0.02 is unattainable",
};

Outcome identities() {
  Outcome o;
  const quad::QuadratureConfig cfg;
  const double a = quad::integrate_sin2_semi_infinite([](double t) { return 1.0 / (t * t); }, 0.0, cfg).value;
  const double b = quad::integrate_sin2_semi_infinite([](double t) { return 1.0 / (t * t + 1.0); }, 0.0, cfg).value;
  const double ea = std::abs(a - pi / 2.0);
  const double eb = std::abs(b - pi / 4.0 * (1.0 - std::exp(-2.0)));
  o.require(ea <= 1e-8, "sin^2/t^2");
  o.require(eb <= 1e-8, "sin^2/(t^2+1)");
  o.note("errors " + fmt(ea) + ", " + fmt(eb));
  return o;
}

Outcome closed_form_minima() {
  Outcome o;
  for (double alpha : {1.0 / pi, 1.0, 4.0}) {
    const double L = 20.0 / std::sqrt(alpha) * std::max(1.0, std::sqrt(pi));
    const Profile1D p = sample_wall({alpha, 1.0, 0.0}, L, 4097).profile;
    const double target = 4.0 * std::sqrt(alpha);
    const double rel = std::abs(reduced_energy_alpha(p, alpha) - target) / target;
    o.require(rel <= 5e-3, "E_alpha at alpha = " + fmt(alpha));
    o.note("alpha " + fmt(alpha) + " rel " + fmt(rel));
  }
  const Profile1D p0 = sample_wall({1.0 / pi, 1.0, 0.0}, 20.0 * std::sqrt(pi), 4097).profile;
  const ReducedEnergy e0 = reduced_energy_E0(p0);
  const double target = 16.0 / std::sqrt(pi);
  const double rel = e0.is_infinite() ? INFINITY : std::abs(e0.value() - target) / target;
  o.require(rel <= 5e-3, "E_0");
  o.note("E_0 rel " + fmt(rel));
  return o;
}

Outcome descent() {
  Outcome o;
  const double alpha = 1.0;
  const DescentResult r = minimize_reduced(arc_profile(20.0, 2049, 20.0), alpha);
  const double rel = std::abs(r.energy - 4.0 * std::sqrt(alpha)) / (4.0 * std::sqrt(alpha));
  const RecenterReport rc = compare_recentered(r.profile, alpha);
  o.require(rel <= 0.01, "energy within 1%");
  o.require(rc.max_deviation < 0.02, "deviation < 0.02");
  o.note("energy " + fmt(r.energy) + ", deviation " + fmt(rc.max_deviation) + ", " + std::to_string(r.iterations) +
         " iterations");
  return o;
}

Outcome kernel_bracket() {
  Outcome o;
  for (double c : {1e-12, 1e-14}) {
    const double lc = std::abs(std::log(c));
    const double lo = 0.5 * c * lc * (1.0 - 5.0 / std::sqrt(lc));
    const double hi = 0.5 * c * (3.0 - std::log(c));
    const double a = a_c(c);
    o.require(lo <= a && a <= hi, "bracket at c = " + fmt(c));
    o.note("c " + fmt(c) + ": " + fmt(lo) + " <= " + fmt(a) + " <= " + fmt(hi));
  }
  for (double c : {1e-4, 1e-8, 1e-12}) {
    const CrossSection cs(0.1, 0.1 * c);
    const double l = cs.l();
    const std::vector<double> xs{0.0, 0.5 / l, -0.5 / l, 1.0 / l, -1.0 / l};
    const Lemma32Report r = evaluate_lemma32(cs, xs);
    bool upper = true;
    for (const auto& s : r.samples) {
      const double budget = s.error_estimate + 1e-10 * (std::abs(s.value) + r.bounds.upper_i);
      upper = upper && s.margin_i >= -budget && s.margin_ii >= -budget;
    }
    o.require(upper, "upper bounds at c = " + fmt(c));
  }
  return o;
}

Outcome corollary_trend() {
  Outcome o;
  double prev = INFINITY;
  for (double c : {1e-4, 1e-8, 1e-12}) {
    const double gap = std::abs(a_c_scaling_ratio(c) - 0.5);
    o.require(gap < prev, "strict decrease at c = " + fmt(c));
    o.note("c " + fmt(c) + " gap " + fmt(gap));
    prev = gap;
  }
  return o;
}

Outcome lemma_a2() {
  Outcome o;
  double prev = -INFINITY;
  bool monotone = true;
  for (int i = 0; i < 40; ++i) {
    const double c = std::pow(10.0, -12.0 + 15.0 * i / 39.0);
    const double a = a_c(c);
    monotone = monotone && a > prev;
    prev = a;
  }
  o.require(monotone, "monotone on 40-point grid");
  const double a100 = a_c(100.0);
  const double dist = pi / 2.0 - a100;
  o.require(dist > 0.0, "a_100 below pi/2");
  o.require(dist <= 0.02, "a_100 within 0.02 of pi/2");
  o.note("monotone " + std::string(monotone ? "yes" : "no") + ", pi/2 - a_100 = " + fmt(dist));
  return o;
}

Outcome spectral_oracle() {
  Outcome o;
  const std::string dir = golden_dir(WALLSCALE_TEST_DATA "/golden/v1");
  const GoldenEntry g = find_golden(dir, "standard_wall_l0.1_d0.05", "e_s");
  const CrossSection cs(0.1, 0.05);
  const Profile1D p = sample_wall({1.0, 1.0, 0.0}, 20.0, 4097).profile;
  const auto t0 = std::chrono::steady_clock::now();
  const OracleResult coarse = e_s_boundary_oracle(p, cs);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double es = e_s_spectral(p, cs);
  const double rel = std::abs(es - g.value) / g.value;
  o.require(rel <= 0.02, "spectral within 2% of golden");
  o.require(seconds < 300.0, "coarsest oracle under 5 min");
  o.require(std::abs(coarse.energy - g.value) / g.value <= 0.02, "coarse oracle near golden");
  o.note("spectral " + fmt(es) + ", golden " + fmt(g.value) + ", rel " + fmt(rel) + ", coarse oracle " +
         fmt(seconds) + " s");
  return o;
}

Outcome rate_check() {
  Outcome o;
  std::vector<CrossSection> cases;
  for (double c : {1e-2, 1e-4, 1e-6}) cases.emplace_back(1e-3, c * 1e-3);
  const std::vector<SweepRecord> rs = rate_sweep(cases);
  for (const auto& r : rs) {
    o.require(r.error.empty(), "case c = " + fmt(r.c) + ": " + r.error);
    o.require(r.gap <= r.rate_rhs, "upper side at c = " + fmt(r.c));
    o.require(r.rescaled_min_upper >= r.gamma_limit - r.rate_rhs, "lower side at c = " + fmt(r.c));
  }
  for (std::size_t i = 1; i < rs.size(); ++i) o.require(rs[i].gap < rs[i - 1].gap, "gap decreasing");
  std::string gaps;
  for (const auto& r : rs) gaps += (gaps.empty() ? "" : ", ") + fmt(r.gap);
  o.note("gaps " + gaps);
  return o;
}

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

Outcome properties() {
  Outcome o;
  std::mt19937_64 rng(12345);

  std::uniform_real_distribution<double> ua(0.05, 10.0), ub(-5.0, 5.0), ut(-pi, pi), ux(-30.0, 30.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double beta = ub(rng);
    if (beta == 0.0) beta = 1.0;
    worst = std::max(worst, std::abs(norm(eval_wall({ua(rng), beta, ut(rng)}, ux(rng))) - 1.0));
  }
  o.require(worst <= 1e-14, "unit norm");

  const Profile1D p = sample_wall({2.0, 0.5, 0.7}, 15.0, 1025).profile;
  const SpectrumProfile s = spectrum(p);
  double m2 = 0.0;
  for (std::size_t n = 0; n + 1 < p.size(); ++n) m2 += p[n].m2 * p[n].m2;
  const double planch = std::abs(SpectrumProfile::mass(s.m2_hat, s.weights, s.dk) - m2 * p.spacing());
  o.require(planch <= 1e-10, "Plancherel");

  std::normal_distribution<double> noise(0.0, 0.2);
  std::vector<Vec3> m = sample_wall({1.0, 1.0, 0.4}, 16.0, 129).profile.values();
  for (std::size_t i = 1; i + 1 < m.size(); ++i) m[i] = normalized(m[i] + Vec3{noise(rng), noise(rng), noise(rng)});
  const double h = 32.0 / 128.0;
  const DiscreteEnergy e = alpha_energy(1.0);
  const std::vector<Vec3> g = e.gradient(m, h);
  double grad_err = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (double Vec3::*c : {&Vec3::m1, &Vec3::m2, &Vec3::m3}) {
      std::vector<Vec3> up = m, dn = m;
      up[i].*c += 1e-5;
      dn[i].*c -= 1e-5;
      const double fd = (e.value(up, h) - e.value(dn, h)) / 2e-5;
      grad_err = std::max(grad_err, std::abs(fd - g[i].*c) / std::max(1.0, std::abs(g[i].*c)));
    }
  }
  o.require(grad_err <= 1e-6, "gradient vs finite differences");

  const CrossSection cs(0.1, 0.05);
  const Profile1D w = sample_wall({1.0, 1.0, 0.0}, 20.0, 1025).profile;
  std::uniform_real_distribution<double> amp(1e-3, 0.5);
  std::normal_distribution<double> unit(0.0, 1.0);
  int lipschitz_ok = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec3> v = w.values();
    const double a = amp(rng);
    for (std::size_t i = 1; i + 1 < v.size(); ++i) v[i] = normalized(v[i] + a * Vec3{unit(rng), unit(rng), unit(rng)});
    try {
      lipschitz_ok += emag_lipschitz_check(w, Profile1D(w.half_length(), v), cs).passed ? 1 : 0;
    } catch (const VerificationFailure&) {
    }
  }
  o.require(lipschitz_ok == 20, "Lipschitz estimate");

  const Profile1D r0 = sample_wall({1.0, 1.0, 0.0}, 20.0, 2049).profile;
  const CrossSection rs(0.1, 0.02);
  const double e0 = e_s_spectral(r0, rs);
  const double e90 = e_s_spectral(rotate(r0, pi / 2), rs);
  double rot_err = 0.0;
  double reduced_err = 0.0;
  for (double theta : {0.3, 1.0, 2.2}) {
    const Profile1D rp = rotate(r0, theta);
    const double mix = std::pow(std::cos(theta), 2) * e0 + std::pow(std::sin(theta), 2) * e90;
    rot_err = std::max(rot_err, std::abs(e_s_spectral(rp, rs) - mix) / e90);
    reduced_err = std::max(reduced_err, std::abs(reduced_energy_alpha(rp, 1.0) - reduced_energy_alpha(r0, 1.0)));
  }
  o.require(rot_err <= 1e-10 && reduced_err <= 1e-10, "rotation");

  o.note("norm " + fmt(worst) + ", Plancherel " + fmt(planch) + ", gradient " + fmt(grad_err) + ", Lipschitz " +
         std::to_string(lipschitz_ok) + "/20, rotation " + fmt(rot_err) + "/" + fmt(reduced_err));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "identity suite", 1.0, identities},
      {2, "closed-form minima", 5.0, closed_form_minima},
      {3, "descent recovery", 60.0, descent},
      {4, "kernel bracket", 30.0, kernel_bracket},
      {5, "scaling-ratio trend", 10.0, corollary_trend},
      {6, "a_c monotone and a_100 near pi/2", 1e9, lemma_a2},
      {7, "spectral-oracle equivalence", 1e9, spectral_oracle},
      {8, "rate check", 600.0, rate_check},
      {9, "property suite", 1e9, properties},
  };

  int passed = 0;
  std::vector<int> unexpected;
  std::vector<int> known;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (seconds > c.budget_seconds) o.require(false, "runtime " + fmt(seconds) + " s over " + fmt(c.budget_seconds) + " s");
    std::printf("%s %d %s (%s; %.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), seconds);
    if (o.pass) {
      ++passed;
    } else if (kKnownFailures.count(c.id)) {
      known.push_back(c.id);
      std::printf("     known failure: %s\n", kKnownReason[c.id]);
    } else {
      unexpected.push_back(c.id);
    }
    std::fflush(stdout);
  }
  std::printf("%d/%zu passed", passed, criteria.size());
  if (!known.empty()) std::printf("; %zu known failure(s)", known.size());
  if (!unexpected.empty()) std::printf("; %zu unexpected failure(s)", unexpected.size());
  std::printf("\n");
  if (!unexpected.empty()) return 1;
  return strict && !known.empty() ? 1 : 0;
}
