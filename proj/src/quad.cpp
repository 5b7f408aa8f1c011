#include "wallscale/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "wallscale/error.hpp"

namespace wallscale::quad {

namespace {

// Kronrod abscissae; odd indices (1, 3, ..., 9) are the Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525029894, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Segment {
  double a;
  double b;
  double value;
  double error;
};

double checked(const Integrand& f, double t) {
  const double y = f(t);
  if (!std::isfinite(y))
    throw NumericalError("non-finite integrand value at t = " + std::to_string(t));
  return y;
}

Segment gauss_kronrod21(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked(f, center);
  double kronrod = fc * kWgk[10];
  double gauss = 0.0;
  double abs_sum = std::abs(kronrod);
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = checked(f, center - dx);
    const double f2 = checked(f, center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    abs_sum += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  const double value = kronrod * half;
  const double roundoff = 50.0 * kEps * abs_sum * std::abs(half);
  const double error = std::max(std::abs((kronrod - gauss) * half), roundoff);
  return {a, b, value, error};
}

struct WorseFirst {
  bool operator()(const Segment& x, const Segment& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  }
};

QuadratureResult adaptive(const Integrand& f, std::span<const double> points, const QuadratureConfig& cfg) {
  cfg.validate();
  if (points.size() < 2) throw InvalidArgument("quadrature needs at least two points");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i - 1] < points[i]) || !std::isfinite(points[i - 1]) || !std::isfinite(points[i]))
      throw InvalidArgument("quadrature points must be finite and strictly increasing");
  }

  std::priority_queue<Segment, std::vector<Segment>, WorseFirst> heap;
  double value = 0.0;
  double error = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const Segment s = gauss_kronrod21(f, points[i - 1], points[i]);
    value += s.value;
    error += s.error;
    heap.push(s);
  }

  int subdivisions = 0;
  while (error > cfg.target(value)) {
    if (subdivisions >= cfg.max_subdivisions)
      throw NumericalError("quadrature subdivision budget exhausted (" + std::to_string(cfg.max_subdivisions) +
                           ") with error estimate " + std::to_string(error));
    const Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b))
      throw NumericalError("quadrature interval too small to refine near t = " + std::to_string(worst.a));
    heap.pop();
    const Segment left = gauss_kronrod21(f, worst.a, mid);
    const Segment right = gauss_kronrod21(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
  }

  // Re-sum in a fixed order so the result does not carry incremental drift.
  std::vector<Segment> segments;
  segments.reserve(heap.size());
  while (!heap.empty()) {
    segments.push_back(heap.top());
    heap.pop();
  }
  std::sort(segments.begin(), segments.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
  QuadratureResult result;
  for (const Segment& s : segments) {
    result.value += s.value;
    result.error_estimate += s.error;
  }
  result.subdivisions_used = subdivisions;
  return result;
}

QuadratureConfig share(const QuadratureConfig& cfg, double parts) {
  QuadratureConfig out = cfg;
  out.abs_tol = cfg.abs_tol / parts;
  out.rel_tol = cfg.rel_tol / parts;
  return out;
}

// Wynn's epsilon algorithm over a stream of partial sums. Keeps the latest
// anti-diagonal eps_k^{(n-k)}, k = 0..n.
class EpsilonTable {
 public:
  double add(double partial_sum) {
    std::vector<double> next;
    next.reserve(diag_.size() + 1);
    next.push_back(partial_sum);
    for (std::size_t k = 1; k <= diag_.size() && k <= kMaxColumns; ++k) {
      const double delta = next[k - 1] - diag_[k - 1];
      if (delta == 0.0 || !std::isfinite(delta)) break;
      const double prev = k >= 2 ? diag_[k - 2] : 0.0;
      const double entry = prev + 1.0 / delta;
      if (!std::isfinite(entry)) break;
      next.push_back(entry);
    }
    diag_ = std::move(next);
    const std::size_t best = (diag_.size() - 1) & ~std::size_t{1};
    return diag_[best];
  }

 private:
  static constexpr std::size_t kMaxColumns = 40;
  std::vector<double> diag_;
};

}  // namespace

void QuadratureConfig::validate() const {
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) || (abs_tol == 0.0 && rel_tol == 0.0))
    throw InvalidArgument("quadrature tolerances must be non-negative with at least one positive");
  if (max_subdivisions < 1) throw InvalidArgument("max_subdivisions must be >= 1");
  if (!(semi_infinite_split > 0.0) || !std::isfinite(semi_infinite_split))
    throw InvalidArgument("semi_infinite_split must be positive");
}

double QuadratureConfig::target(double value) const { return std::max(abs_tol, rel_tol * std::abs(value)); }

double sinc_squared(double t) {
  if (std::abs(t) < 1e-4) {
    const double t2 = t * t;
    return 1.0 - t2 / 3.0 + 2.0 * t2 * t2 / 45.0;
  }
  const double s = std::sin(t) / t;
  return s * s;
}

QuadratureResult integrate_finite(const Integrand& f, double a, double b, const QuadratureConfig& cfg) {
  if (!(a < b)) throw InvalidArgument("integrate_finite requires a < b");
  const std::array<double, 2> points = {a, b};
  return adaptive(f, points, cfg);
}

QuadratureResult integrate_breakpoints(const Integrand& f, std::span<const double> points,
                                       const QuadratureConfig& cfg) {
  return adaptive(f, points, cfg);
}

QuadratureResult integrate_semi_infinite(const Integrand& f, double a, const QuadratureConfig& cfg) {
  cfg.validate();
  const double split = a + cfg.semi_infinite_split;
  if (!std::isfinite(a) || !(split > 0.0))
    throw InvalidArgument("integrate_semi_infinite requires a + split > 0");
  const QuadratureConfig half = share(cfg, 2.0);
  QuadratureResult result = integrate_finite(f, a, split, half);
  const Integrand mapped = [&f](double u) { return f(1.0 / u) / (u * u); };
  try {
    result += integrate_finite(mapped, 0.0, 1.0 / split, half);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string("tail nonconvergence: ") + e.what());
  }
  return result;
}

QuadratureResult integrate_cosine_tail(const Integrand& g, double a, double omega, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(omega > 0.0) || !std::isfinite(omega) || !std::isfinite(a))
    throw InvalidArgument("integrate_cosine_tail requires finite a and omega > 0");
  constexpr int kMaxPanels = 400;
  constexpr int kMinPanels = 6;
  const double pi = std::numbers::pi;
  const double period = pi / omega;
  // First zero of cos(omega t) strictly after a.
  double k = std::ceil((omega * a - 0.5 * pi) / pi);
  double zero = (0.5 * pi + k * pi) / omega;
  if (zero <= a) zero = (0.5 * pi + (k + 1.0) * pi) / omega;

  const QuadratureConfig panel_cfg = share(cfg, 64.0);
  const Integrand f = [&g, omega](double t) { return g(t) * std::cos(omega * t); };
  EpsilonTable table;
  QuadratureResult result;
  double partial = 0.0;
  double panel_error = 0.0;
  double lo = a;
  double hi = zero;
  double prev = 0.0;
  double prev2 = 0.0;
  for (int n = 0; n < kMaxPanels; ++n) {
    const QuadratureResult panel = integrate_finite(f, lo, hi, panel_cfg);
    partial += panel.value;
    panel_error += panel.error_estimate;
    result.subdivisions_used += panel.subdivisions_used;
    const double estimate = table.add(partial);
    if (n >= kMinPanels) {
      const double change = std::abs(estimate - prev) + std::abs(prev - prev2);
      if (change + panel_error <= cfg.target(estimate)) {
        result.value = estimate;
        result.error_estimate = change + panel_error;
        return result;
      }
    }
    prev2 = prev;
    prev = estimate;
    lo = hi;
    hi += period;
  }
  throw NumericalError("cosine tail nonconvergence after " + std::to_string(kMaxPanels) + " panels");
}

QuadratureResult integrate_sin2_semi_infinite(const Integrand& g, double a, const QuadratureConfig& cfg,
                                              std::span<const double> breakpoints) {
  cfg.validate();
  const double split = a + cfg.semi_infinite_split;
  if (!std::isfinite(a) || !(split > 0.0))
    throw InvalidArgument("integrate_sin2_semi_infinite requires a + split > 0");
  const QuadratureConfig third = share(cfg, 3.0);

  std::vector<double> points{a};
  std::vector<double> interior(breakpoints.begin(), breakpoints.end());
  std::sort(interior.begin(), interior.end());
  for (double p : interior)
    if (p > points.back() && p < split) points.push_back(p);
  points.push_back(split);

  const Integrand finite = [&g](double t) {
    const double s = std::sin(t);
    return s * s * g(t);
  };
  QuadratureResult result = integrate_breakpoints(finite, points, third);

  const Integrand mapped = [&g](double u) { return g(1.0 / u) / (u * u); };
  QuadratureResult smooth;
  try {
    smooth = integrate_finite(mapped, 0.0, 1.0 / split, third);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string("tail nonconvergence: ") + e.what());
  }
  const QuadratureResult oscillating = integrate_cosine_tail(g, split, 2.0, third);

  result.value += 0.5 * smooth.value - 0.5 * oscillating.value;
  result.error_estimate += 0.5 * (smooth.error_estimate + oscillating.error_estimate);
  result.subdivisions_used += smooth.subdivisions_used + oscillating.subdivisions_used;
  return result;
}

}  // namespace wallscale::quad
