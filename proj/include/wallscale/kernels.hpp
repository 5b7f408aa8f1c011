#pragma once

// Magnetostatic kernels of a rectangular cross-section [-l, l] x [-d, d].
//
//   a_c       = int_0^inf sinc^2(t) phi(2t/c) dt,       phi(u) = (1 - e^-u) / u
//   b_c       = a_{1/c}
//   I(l,d,x)  = 2 pi l d int_0^inf sinc^2(t) phi(2c sqrt(t^2 + l^2 x^2)) dt
//   I(d,l,x)  = 2 pi l d int_0^inf sinc^2(t) phi((2/c) sqrt(t^2 + d^2 x^2)) dt
//
// with c = d / l. Both I's are instances of the reduced kernel
// K(r, q) = int_0^inf sinc^2(t) phi(2r sqrt(t^2 + q^2)) dt.

#include <span>
#include <vector>

#include "wallscale/quad.hpp"

namespace wallscale {

class CrossSection {
 public:
  /// Throws InvalidArgument unless 0 < d <= l (both finite).
  CrossSection(double l, double d);

  double l() const { return l_; }
  double d() const { return d_; }
  double c() const { return c_; }

 private:
  double l_;
  double d_;
  double c_;
};

/// (1 - e^-u) / u for u >= 0, accurate for tiny u and overflow-free for huge u.
double phi(double u);
/// 1 - phi(u), series for small u.
double one_minus_phi(double u);

/// K(r, q) with its quadrature error estimate. r > 0, q finite.
quad::QuadratureResult reduced_kernel(double r, double q, const quad::QuadratureConfig& cfg);

double a_c(double c, const quad::QuadratureConfig& cfg = {});
double b_c(double c, const quad::QuadratureConfig& cfg = {});

/// I(l,d,x) for swap = false, I(d,l,x) for swap = true.
double i_kernel(const CrossSection& cs, bool swap, double x, const quad::QuadratureConfig& cfg = {});
/// Same, with the quadrature error estimate scaled to kernel units.
quad::QuadratureResult i_kernel_result(const CrossSection& cs, bool swap, double x,
                                       const quad::QuadratureConfig& cfg = {});

struct KernelBoundTriple {
  double upper_i = 0.0;    ///< 2 pi l d a_c
  double upper_ii = 0.0;   ///< pi l d c (3 - ln c)
  double lower_iii = 0.0;  ///< pi l d c |ln c| (1 - 5 / sqrt|ln c|), may be negative
  bool vacuous = true;     ///< lower_iii <= 0
};

/// Bounds on I(d,l,x). Closed-form except upper_i, which needs a_c.
KernelBoundTriple lemma32_bounds(const CrossSection& cs, const quad::QuadratureConfig& cfg = {});

struct Lemma32Sample {
  double x = 0.0;
  double value = 0.0;
  double error_estimate = 0.0;
  double margin_i = 0.0;    ///< upper_i - value
  double margin_ii = 0.0;   ///< upper_ii - value
  double margin_iii = 0.0;  ///< value - lower_iii (only meaningful when lower_checked)
  bool lower_checked = false;
  bool passed = true;
};

struct Lemma32Report {
  KernelBoundTriple bounds;
  std::vector<Lemma32Sample> samples;
  bool passed = true;
};

/// Evaluates the inequalities at every sample; never throws on a violation.
Lemma32Report evaluate_lemma32(const CrossSection& cs, std::span<const double> x_samples,
                               const quad::QuadratureConfig& cfg = {});
/// As evaluate_lemma32, but throws VerificationFailure naming the failing samples.
Lemma32Report verify_lemma32(const CrossSection& cs, std::span<const double> x_samples,
                             const quad::QuadratureConfig& cfg = {});

/// Volume-charge kernel
///   K_v(l,d,k) = int int sin^2(ly) sin^2(dz) / (y^2 z^2 (k^2 + y^2 + z^2)) dy dz
///              = 2 pi d l^3 int_0^inf sinc^2(t) (1 - phi(2c sqrt(t^2 + l^2 k^2))) / (t^2 + l^2 k^2) dt,
/// so that E_v = (4/pi^2) int K_v |(m1')^(k)|^2 dk. Diverges like ln(1/|k|) at k = 0.
quad::QuadratureResult volume_kernel(const CrossSection& cs, double k, const quad::QuadratureConfig& cfg = {});
/// Mean of K_v over [-half_width, half_width].
quad::QuadratureResult volume_kernel_mean(const CrossSection& cs, double half_width,
                                          const quad::QuadratureConfig& cfg = {});

/// a_c / (c |ln c|) for 0 < c < 1.
double a_c_scaling_ratio(double c, const quad::QuadratureConfig& cfg = {});

}  // namespace wallscale
