#include "wallscale/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "wallscale/error.hpp"
#include "wallscale/format.hpp"

namespace wallscale {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kRoundoffFloor = 1e-11;

double trapezoid_weight(std::size_t i, std::size_t n) { return (i == 0 || i + 1 == n) ? 0.5 : 1.0; }

// E(b) - E(a) summed termwise as (b - a)(b + a), so it stays accurate when the
// two energies agree to many digits.
double energy_difference(const DiscreteEnergy& e, const std::vector<Vec3>& b, const std::vector<Vec3>& a, double h) {
  const std::size_t n = a.size();
  double ex = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Vec3 da = a[i + 1] - a[i];
    const Vec3 db = b[i + 1] - b[i];
    ex += dot(db - da, db + da);
  }
  double tr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = trapezoid_weight(i, n);
    tr += w * (e.m2_weight * (b[i].m2 - a[i].m2) * (b[i].m2 + a[i].m2) +
               e.m3_weight * (b[i].m3 - a[i].m3) * (b[i].m3 + a[i].m3));
  }
  return e.exchange_weight * ex / h + tr * h;
}

// L^2 gradient on the sphere: tangential part of the Euclidean gradient over
// the node's quadrature weight h. End nodes are pinned.
std::vector<Vec3> descent_direction(const DiscreteEnergy& e, const std::vector<Vec3>& m, double h) {
  std::vector<Vec3> g = e.gradient(m, h);
  g.front() = {};
  g.back() = {};
  for (std::size_t i = 1; i + 1 < m.size(); ++i) g[i] = (1.0 / h) * tangential(g[i], m[i]);
  return g;
}

double l2_dot(const std::vector<Vec3>& a, const std::vector<Vec3>& b, double h) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += dot(a[i], b[i]);
  return s * h;
}

}  // namespace

void DescentConfig::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("descent step must be positive");
  if (!(grad_tol > 0.0)) throw InvalidArgument("gradient tolerance must be positive");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0)) throw InvalidArgument("backtrack factor must lie in (0, 1)");
  if (!(armijo > 0.0 && armijo < 1.0)) throw InvalidArgument("Armijo constant must lie in (0, 1)");
  if (max_backtracks == 0) throw InvalidArgument("max_backtracks must be positive");
}

DescentResult minimize_reduced(const Profile1D& init, const DiscreteEnergy& energy, const DescentConfig& cfg) {
  cfg.validate();
  const double h = init.spacing();
  std::vector<Vec3> m = init.values();
  double e = energy.value(m, h);
  if (!std::isfinite(e)) throw NumericalError("initial energy is not finite");

  DescentResult r{init, e, e, 0.0, 0, false, {e}, {}};
  std::vector<Vec3> d = descent_direction(energy, m, h);
  double gnorm2 = l2_dot(d, d, h);
  double t = cfg.step;
  std::vector<Vec3> trial(m.size());

  std::size_t it = 0;
  for (;; ++it) {
    if (cfg.record_trace) r.trace.push_back({it, e, std::sqrt(gnorm2)});
    if (std::sqrt(gnorm2) < cfg.grad_tol) {
      r.converged = true;
      break;
    }
    if (it == cfg.max_iters) break;

    const double t_first = t;
    bool accepted = false;
    double de = 0.0;
    for (std::size_t b = 0; b < cfg.max_backtracks; ++b) {
      trial.front() = m.front();
      trial.back() = m.back();
      for (std::size_t i = 1; i + 1 < m.size(); ++i) trial[i] = normalized(m[i] - t * d[i]);
      de = energy_difference(energy, trial, m, h);
      if (!std::isfinite(de)) throw NumericalError("non-finite energy during descent at iteration " + std::to_string(it));
      if (de <= -cfg.armijo * t * gnorm2) {
        accepted = true;
        break;
      }
      t *= cfg.backtrack_factor;
    }
    if (!accepted && t_first * gnorm2 <= kRoundoffFloor * std::abs(e)) {
      // The predicted decrease is below what the energy difference can resolve.
      r.converged = true;
      break;
    }
    if (!accepted)
      throw NumericalError("descent stalled at iteration " + std::to_string(it) + " (gradient norm " +
                           format_double(std::sqrt(gnorm2)) + ")");

    std::vector<Vec3> d_new = descent_direction(energy, trial, h);
    std::vector<Vec3> s(m.size());
    std::vector<Vec3> y(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      s[i] = trial[i] - m[i];
      y[i] = d_new[i] - d[i];
    }
    const double sy = l2_dot(s, y, h);
    const double ss = l2_dot(s, s, h);
    // Rounded to a grid of 2^(1/16) so that roundoff-level differences between
    // equivalent runs do not change the step sequence.
    t = sy > 0.0 ? std::exp2(std::round(16.0 * std::log2(ss / sy)) / 16.0) : 2.0 * t;

    m.swap(trial);
    d.swap(d_new);
    gnorm2 = l2_dot(d, d, h);
    e += de;
    r.energy_history.push_back(e);
  }

  r.iterations = it;
  r.grad_norm = std::sqrt(gnorm2);
  r.energy = energy.value(m, h);
  r.profile = Profile1D(init.half_length(), std::move(m));
  return r;
}

DescentResult minimize_reduced(const Profile1D& init, double alpha, const DescentConfig& cfg) {
  return minimize_reduced(init, alpha_energy(alpha), cfg);
}

DescentResult minimize_reduced(const Profile1D& init, const ReducedEnergyWeights& weights, const DescentConfig& cfg) {
  if (weights.forbid_m3 && reduced_energy_E0(init, weights).is_infinite())
    throw InvalidArgument("initial profile has an m3 component; E_0 is infinite there");
  return minimize_reduced(init, weights.energy(), cfg);
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
  out << "iteration,energy,grad_norm\n";
  for (const auto& row : trace)
    out << row.iteration << ',' << format_double(row.energy) << ',' << format_double(row.grad_norm) << '\n';
}

Profile1D arc_profile(double half_length, std::size_t nodes, double width) {
  if (!(width > 0.0)) throw InvalidArgument("arc width must be positive");
  if (nodes < 3) throw InvalidArgument("arc needs at least three nodes");
  std::vector<Vec3> v(nodes);
  const Profile1D grid = Profile1D::unchecked(half_length, v);
  for (std::size_t i = 0; i < nodes; ++i) {
    const double s = std::clamp(grid.x(i) / width, -1.0, 1.0);
    v[i] = {std::sin(0.5 * pi * s), std::cos(0.5 * pi * s), 0.0};
    if (std::abs(s) == 1.0) v[i] = {s, 0.0, 0.0};
  }
  return Profile1D(half_length, std::move(v));
}

RecenterReport compare_recentered(const Profile1D& p, double alpha) {
  RecenterReport r;
  const double h = p.spacing();
  std::size_t i = 0;
  while (i + 1 < p.size() && !(p[i].m1 <= 0.0 && p[i + 1].m1 > 0.0)) ++i;
  if (i + 1 == p.size()) throw InvalidArgument("profile has no sign change of m1");
  r.center = p.x(i) + h * (-p[i].m1) / (p[i + 1].m1 - p[i].m1);
  const std::size_t near = (r.center - p.x(i) < 0.5 * h) ? i : i + 1;
  r.theta = std::atan2(p[near].m3, p[near].m2);
  const ClosedFormWall w{alpha, 1.0, r.theta};
  for (std::size_t k = 0; k < p.size(); ++k)
    r.max_deviation = std::max(r.max_deviation, norm(p[k] - eval_wall(w, p.x(k) - r.center)));
  return r;
}

Profile1D ansatz_profile(double scale, std::size_t nodes) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw InvalidArgument("wall scale must be positive");
  return sample_wall({1.0 / (pi * scale * scale), 1.0, 0.0}, 20.0 * std::sqrt(pi) * scale, nodes).profile;
}

std::vector<double> default_scale_grid(const CrossSection& cs) {
  const double lambda = RescalingParams::of(cs).lambda;
  std::vector<double> grid;
  for (int k = -4; k <= 4; ++k) grid.push_back(lambda * std::exp2(0.5 * k));
  return grid;
}

AnsatzSearchResult minimize_full_ansatz(const CrossSection& cs, const std::vector<double>& scale_grid,
                                        const AnsatzConfig& cfg) {
  if (!(cs.c() < 1.0)) throw InvalidArgument("ansatz search requires c < 1");
  std::vector<double> grid = scale_grid.empty() ? default_scale_grid(cs) : scale_grid;
  std::sort(grid.begin(), grid.end());
  AnsatzSearchResult r;

  const auto probe = [&](double s) {
    const EnergyBreakdown e = full_energy(ansatz_profile(s, cfg.nodes), cs, cfg.magnetostatics);
    const double v = *e.rescaled_upper;
    if (!std::isfinite(v)) throw NumericalError("non-finite ansatz energy at scale " + format_double(s));
    r.probes.push_back({s, v});
    if (r.probes.size() == 1 || v < r.energy) {
      r.energy = v;
      r.best_scale = s;
      r.breakdown = e;
    }
    return v;
  };

  std::vector<double> values;
  for (double s : grid) values.push_back(probe(s));

  if (grid.size() > 1) {
    const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    double a = std::log(grid[best == 0 ? 0 : best - 1]);
    double b = std::log(grid[std::min(best + 1, grid.size() - 1)]);
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - g * (b - a);
    double x2 = a + g * (b - a);
    double f1 = probe(std::exp(x1));
    double f2 = probe(std::exp(x2));
    for (std::size_t k = 0; k < cfg.golden_depth; ++k) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - g * (b - a);
        f1 = probe(std::exp(x1));
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + g * (b - a);
        f2 = probe(std::exp(x2));
      }
    }
  }
  r.evaluations = r.probes.size();
  return r;
}

}  // namespace wallscale
