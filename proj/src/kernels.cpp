#include "wallscale/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "wallscale/error.hpp"

namespace wallscale {

namespace {

constexpr double pi = std::numbers::pi;
// Beyond this e^-u is below 1e-40 and 1 - e^-u rounds to 1.
const double kSaturation = 40.0 * std::log(10.0);

std::vector<double> kernel_breakpoints(double r, double q) {
  double scale = std::min(1.0, 0.5 / r);
  if (q > 0.0) scale = std::min(scale, q);
  std::vector<double> points;
  for (double t = scale / 8.0; t < 1.0; t *= 4.0) points.push_back(t);
  points.push_back(1.0);
  return points;
}

quad::QuadratureResult kernel_area_scaled(const CrossSection& cs, bool swap, double x, const quad::QuadratureConfig& cfg,
                                          double& area) {
  if (!std::isfinite(x)) throw InvalidArgument("kernel frequency must be finite");
  const double c = cs.c();
  const double r = swap ? 1.0 / c : c;
  const double s = swap ? cs.d() : cs.l();
  area = 2.0 * pi * cs.l() * cs.d();
  return reduced_kernel(r, s * x, cfg);
}

}  // namespace

CrossSection::CrossSection(double l, double d) : l_(l), d_(d), c_(d / l) {
  if (!std::isfinite(l) || !std::isfinite(d) || !(d > 0.0) || !(d <= l))
    throw InvalidArgument("cross-section requires 0 < d <= l, got l = " + std::to_string(l) +
                          ", d = " + std::to_string(d));
}

double phi(double u) {
  if (u < 1e-5) return 1.0 - u * (0.5 - u / 6.0);
  if (u > kSaturation) return 1.0 / u;
  return -std::expm1(-u) / u;
}

quad::QuadratureResult reduced_kernel(double r, double q, const quad::QuadratureConfig& cfg) {
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("kernel ratio must be positive and finite");
  if (!std::isfinite(q)) throw InvalidArgument("kernel frequency must be finite");
  q = std::abs(q);

  quad::QuadratureConfig scaled = cfg;
  if (r > 1.0) scaled.abs_tol *= std::min(1.0, (3.0 + std::log(r)) / (2.0 * r));

  const double two_r = 2.0 * r;
  const quad::Integrand g = [two_r, q](double t) { return phi(two_r * std::hypot(t, q)) / (t * t); };
  const std::vector<double> points = kernel_breakpoints(r, q);
  return quad::integrate_sin2_semi_infinite(g, 0.0, scaled, points);
}

double one_minus_phi(double u) {
  if (u < 1e-3) return u * (0.5 - u * (1.0 / 6.0 - u * (1.0 / 24.0 - u / 120.0)));
  return 1.0 - phi(u);
}

quad::QuadratureResult volume_kernel(const CrossSection& cs, double k, const quad::QuadratureConfig& cfg) {
  if (!std::isfinite(k) || k == 0.0) throw InvalidArgument("volume kernel needs a finite nonzero frequency");
  const double c = cs.c();
  const double q = std::abs(cs.l() * k);
  quad::QuadratureConfig scaled = cfg;
  scaled.abs_tol *= c;
  const double two_c = 2.0 * c;
  const quad::Integrand g = [two_c, q](double t) {
    const double rho2 = t * t + q * q;
    return one_minus_phi(two_c * std::sqrt(rho2)) / (rho2 * t * t);
  };
  const std::vector<double> points = kernel_breakpoints(c, q);
  quad::QuadratureResult r = quad::integrate_sin2_semi_infinite(g, 0.0, scaled, points);
  const double scale = 2.0 * pi * cs.d() * cs.l() * cs.l() * cs.l();
  r.value *= scale;
  r.error_estimate *= scale;
  return r;
}

quad::QuadratureResult volume_kernel_mean(const CrossSection& cs, double half_width, const quad::QuadratureConfig& cfg) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) throw InvalidArgument("averaging width must be positive");
  quad::QuadratureConfig inner = cfg;
  inner.abs_tol *= 1e-2;
  inner.rel_tol *= 1e-2;
  const quad::Integrand f = [&](double k) { return volume_kernel(cs, k, inner).value; };
  // Geometric breakpoints resolve the logarithmic singularity at k = 0.
  std::vector<double> points{0.0};
  for (double k = half_width * 1e-12; k < half_width; k *= 16.0) points.push_back(k);
  points.push_back(half_width);
  quad::QuadratureConfig outer = cfg;
  outer.abs_tol *= cs.c() * cs.d() * cs.l() * cs.l() * cs.l() * half_width;
  quad::QuadratureResult r = quad::integrate_breakpoints(f, points, outer);
  r.value /= half_width;
  r.error_estimate /= half_width;
  return r;
}

double a_c(double c, const quad::QuadratureConfig& cfg) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("a_c requires a positive finite c");
  return reduced_kernel(1.0 / c, 0.0, cfg).value;
}

double b_c(double c, const quad::QuadratureConfig& cfg) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("b_c requires a positive finite c");
  return a_c(1.0 / c, cfg);
}

quad::QuadratureResult i_kernel_result(const CrossSection& cs, bool swap, double x, const quad::QuadratureConfig& cfg) {
  double area = 0.0;
  quad::QuadratureResult k = kernel_area_scaled(cs, swap, x, cfg, area);
  k.value = area * k.value;
  k.error_estimate = area * k.error_estimate;
  return k;
}

double i_kernel(const CrossSection& cs, bool swap, double x, const quad::QuadratureConfig& cfg) {
  return i_kernel_result(cs, swap, x, cfg).value;
}

KernelBoundTriple lemma32_bounds(const CrossSection& cs, const quad::QuadratureConfig& cfg) {
  const double l = cs.l();
  const double d = cs.d();
  const double c = cs.c();
  const double log_c = std::abs(std::log(c));
  KernelBoundTriple b;
  b.upper_i = 2.0 * pi * l * d * a_c(c, cfg);
  b.upper_ii = pi * l * d * c * (3.0 - std::log(c));
  b.lower_iii = log_c > 0.0 ? pi * l * d * c * log_c * (1.0 - 5.0 / std::sqrt(log_c)) : 0.0;
  b.vacuous = !(b.lower_iii > 0.0);
  return b;
}

Lemma32Report evaluate_lemma32(const CrossSection& cs, std::span<const double> x_samples,
                               const quad::QuadratureConfig& cfg) {
  if (x_samples.empty()) throw InvalidArgument("lemma check needs at least one sample");
  Lemma32Report report;
  report.bounds = lemma32_bounds(cs, cfg);
  const auto upper_i_q = i_kernel_result(cs, true, 0.0, cfg);
  for (double x : x_samples) {
    const auto r = i_kernel_result(cs, true, x, cfg);
    Lemma32Sample s;
    s.x = x;
    s.value = r.value;
    s.error_estimate = r.error_estimate;
    s.margin_i = report.bounds.upper_i - r.value;
    s.margin_ii = report.bounds.upper_ii - r.value;
    s.margin_iii = r.value - report.bounds.lower_iii;
    s.lower_checked = std::abs(x) * cs.l() <= 1.0 + 1e-12;

    const double own = r.error_estimate + cfg.rel_tol * std::abs(r.value);
    const double budget_i = own + upper_i_q.error_estimate + cfg.rel_tol * std::abs(report.bounds.upper_i);
    s.passed = s.margin_i >= -budget_i && s.margin_ii >= -own && (!s.lower_checked || s.margin_iii >= -own);
    report.passed = report.passed && s.passed;
    report.samples.push_back(s);
  }
  return report;
}

Lemma32Report verify_lemma32(const CrossSection& cs, std::span<const double> x_samples,
                             const quad::QuadratureConfig& cfg) {
  Lemma32Report report = evaluate_lemma32(cs, x_samples, cfg);
  if (!report.passed) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "kernel bounds violated for l = " << cs.l() << ", d = " << cs.d() << ":";
    for (const auto& s : report.samples) {
      if (s.passed) continue;
      msg << " [x = " << s.x << ", I = " << s.value << ", margins " << s.margin_i << ", " << s.margin_ii;
      if (s.lower_checked) msg << ", " << s.margin_iii;
      msg << "]";
    }
    throw VerificationFailure(msg.str());
  }
  return report;
}

double a_c_scaling_ratio(double c, const quad::QuadratureConfig& cfg) {
  if (!(c > 0.0 && c < 1.0)) throw InvalidArgument("scaling ratio requires 0 < c < 1");
  return a_c(c, cfg) / (c * std::abs(std::log(c)));
}

}  // namespace wallscale
