#pragma once

// Adaptive one-dimensional quadrature for the kernel integrands.
//
// All routines use a 21-point Gauss-Kronrod rule with its embedded 10-point
// Gauss rule; |K21 - G10| is the per-interval error estimate. Refinement is
// global: the interval with the largest estimate is bisected until the total
// estimate meets max(abs_tol, rel_tol * |value|).

#include <functional>
#include <span>

namespace wallscale::quad {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 2000;
  /// Length of the finite part [a, a + split] of a semi-infinite integral.
  double semi_infinite_split = 60.0;

  /// Throws InvalidArgument unless at least one tolerance is positive, both
  /// are non-negative, max_subdivisions >= 1 and the split is positive.
  void validate() const;
  /// Target error for a computed value.
  double target(double value) const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions_used = 0;

  QuadratureResult& operator+=(const QuadratureResult& o) {
    value += o.value;
    error_estimate += o.error_estimate;
    subdivisions_used += o.subdivisions_used;
    return *this;
  }
};

using Integrand = std::function<double(double)>;

/// Integral of f over [a, b]. The integrand is never evaluated at a or b, so
/// integrable endpoint singularities are allowed.
QuadratureResult integrate_finite(const Integrand& f, double a, double b, const QuadratureConfig& cfg);

/// Integral over [points.front(), points.back()]; the interior points seed the
/// initial partition (use them to mark scales where the integrand changes).
QuadratureResult integrate_breakpoints(const Integrand& f, std::span<const double> points,
                                       const QuadratureConfig& cfg);

/// Integral of f over [a, inf): adaptive on [a, a + split], then the tail
/// through t = 1/u. Intended for tails that decay monotonically at least like
/// t^-2. An oscillating tail fails with NumericalError ("tail nonconvergence").
QuadratureResult integrate_semi_infinite(const Integrand& f, double a, const QuadratureConfig& cfg);

/// Integral of g(t) cos(omega t) over [a, inf) for smooth, non-oscillating,
/// decaying g. Sums half-period panels and accelerates the alternating partial
/// sums with Wynn's epsilon algorithm.
QuadratureResult integrate_cosine_tail(const Integrand& g, double a, double omega,
                                       const QuadratureConfig& cfg);

/// Integral of sin^2(t) g(t) over [a, inf) where g is smooth, non-oscillating
/// and decays at least like t^-2. The finite part is integrated directly; the
/// tail uses sin^2 = (1 - cos 2t) / 2. Breakpoints inside (a, a + split) seed
/// the finite-part partition.
QuadratureResult integrate_sin2_semi_infinite(const Integrand& g, double a, const QuadratureConfig& cfg,
                                              std::span<const double> breakpoints = {});

/// sin^2(t) / t^2 with the removable singularity filled in (series below 1e-4).
double sinc_squared(double t);

}  // namespace wallscale::quad
