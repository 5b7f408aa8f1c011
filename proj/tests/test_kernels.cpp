#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "wallscale/error.hpp"
#include "wallscale/kernels.hpp"

using namespace wallscale;

namespace {
constexpr double pi = std::numbers::pi;

// Composite trapezoid of sinc^2(t) phi(2t/c) on [0, 1e4], step 5e-4.
double a_c_trapezoid(double c) {
  const double h = 5e-4;
  const long n = 20000000;
  double sum = 0.0;
  for (long i = 0; i <= n; ++i) {
    const double t = h * static_cast<double>(i);
    const double s = i == 0 ? 1.0 : std::sin(t) / t;
    const double u = 2.0 * t / c;
    const double p = u == 0.0 ? 1.0 : -std::expm1(-u) / u;
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    sum += w * s * s * p;
  }
  return h * sum;
}

// Tensor trapezoid of the original double integral over the quadrant
// [0, 2000]^2, with the z tail beyond 2000 replaced by its sin^2-average.
double i_swapped_2d(double l, double d, double x) {
  const double h = 0.5;
  const double zmax = 2000.0;
  const int n = 4000;
  std::vector<double> w(n + 1, h), sz(n + 1), sy(n + 1), z2(n + 1);
  w[0] = w[n] = h / 2.0;
  for (int i = 0; i <= n; ++i) {
    const double v = h * i;
    sz[i] = std::pow(std::sin(l * v), 2);
    sy[i] = i == 0 ? d * d : std::pow(std::sin(d * v) / v, 2);
    z2[i] = v * v;
  }
  double total = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double a = x * x + z2[i];
    double inner = 0.0;
    for (int j = 0; j <= n; ++j) inner += w[j] * sz[j] / (a + z2[j]);
    inner += 0.5 * (pi / 2.0 - std::atan(zmax / std::sqrt(a))) / std::sqrt(a);
    total += w[i] * sy[i] * inner;
  }
  return 4.0 * total;
}
}  // namespace

TEST_CASE("cross-section validation") {
  const CrossSection cs(0.1, 0.01);
  CHECK(cs.c() == 0.01 / 0.1);
  CHECK(CrossSection(1.0, 1.0).c() == 1.0);
  CHECK_THROWS_AS(CrossSection(0.1, 0.2), InvalidArgument);
  CHECK_THROWS_AS(CrossSection(0.1, 0.0), InvalidArgument);
  CHECK_THROWS_AS(CrossSection(-1.0, -2.0), InvalidArgument);
  CHECK_THROWS_AS(CrossSection(INFINITY, 1.0), InvalidArgument);
}

TEST_CASE("phi") {
  CHECK(phi(0.0) == 1.0);
  CHECK(std::abs(phi(1e-6) - (-std::expm1(-1e-6) / 1e-6)) < 1e-15);
  CHECK(std::abs(phi(1.0) - (1.0 - std::exp(-1.0))) < 1e-15);
  CHECK(phi(1e300) == 1e-300);
}

TEST_CASE("a_1 against the dense trapezoid oracle") {
  const double oracle = a_c_trapezoid(1.0);
  CHECK(std::abs(oracle - 0.7853981829807084) < 1e-10);
  CHECK(std::abs(a_c(1.0) - oracle) < 1e-7);
  CHECK(std::abs(a_c(1.0) - pi / 4.0) < 1e-9);
}

TEST_CASE("a_c reference values") {
  // 20-digit evaluations of the defining integral.
  const std::vector<std::pair<double, double>> ref = {
      {1e-14, 1.68680956509583198e-13}, {1e-12, 1.45655105579642741e-11}, {1e-8, 9.96034037197618274e-8},
      {1e-4, 0.000535517018640475803},  {1e-2, 0.0305258925957738199},    {100.0, 1.5402704341991228},
      {1e3, 1.56659244911373889}};
  for (const auto& [c, v] : ref) {
    CAPTURE(c);
    CHECK(std::abs(a_c(c) - v) <= 1e-8 * v);
  }
}

TEST_CASE("a_c examples") {
  const double a100 = a_c(100.0);
  CHECK(a100 < pi / 2.0);
  // The distance to pi/2 is exactly a_{1/100}, about 0.0305.
  CHECK(std::abs((pi / 2.0 - a100) - a_c(0.01)) < 1e-9);
  CHECK(std::abs(a100 - 1.5402704341991228) < 1e-9);

  const double c = 1e-12;
  const double lc = std::abs(std::log(c));
  const double v = a_c(c);
  CHECK(v >= c * lc / 2.0 * (1.0 - 5.0 / std::sqrt(lc)));
  CHECK(v <= c / 2.0 * (3.0 - std::log(c)));

  CHECK_THROWS_AS(a_c(0.0), InvalidArgument);
  CHECK_THROWS_AS(a_c(-1.0), InvalidArgument);
}

TEST_CASE("b_c is a_c at the reciprocal") {
  CHECK(b_c(1.0) == a_c(1.0));
  CHECK(b_c(0.01) == a_c(100.0));
  CHECK(b_c(0.01) < pi / 2.0);
  CHECK(b_c(1e12) == a_c(1e-12));
}

TEST_CASE("a_c is increasing and below pi/2") {
  double prev = 0.0;
  for (int i = 0; i < 40; ++i) {
    const double c = std::pow(10.0, -12.0 + 15.0 * i / 39.0);
    const double v = a_c(c);
    CAPTURE(c);
    CHECK(v > prev);
    CHECK(v < pi / 2.0);
    prev = v;
  }
}

TEST_CASE("a_c + a_{1/c} = pi/2") {
  for (double c : {1e-6, 1e-3, 0.1, 0.5, 1.0}) {
    CAPTURE(c);
    CHECK(std::abs(a_c(c) + a_c(1.0 / c) - pi / 2.0) < 1e-8);
  }
}

TEST_CASE("i_kernel at zero frequency") {
  const CrossSection cs(0.1, 0.01);
  const double c = cs.c();
  CHECK(i_kernel(cs, true, 0.0) == 2.0 * pi * cs.l() * cs.d() * a_c(c));
  const double expected = 2.0 * pi * cs.l() * cs.d() * b_c(c);
  CHECK(std::abs(i_kernel(cs, false, 0.0) - expected) <= 1e-8 * expected);
}

TEST_CASE("i_kernel against the two-dimensional definition") {
  const CrossSection cs(0.1, 0.01);
  const double oracle = i_swapped_2d(0.1, 0.01, 5.0);
  const double v = i_kernel(cs, true, 5.0);
  CHECK(std::abs(v - oracle) <= 0.01 * oracle);
  // 20-digit reference of the single-integral form.
  CHECK(std::abs(v - 0.00109945070725655) <= 1e-8 * v);
}

TEST_CASE("i_kernel symmetry, monotonicity and channel ordering") {
  const CrossSection cs(0.1, 0.01);
  double prev = INFINITY;
  for (double x : {0.0, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0, 1000.0}) {
    CAPTURE(x);
    const double s = i_kernel(cs, true, x);
    CHECK(s == i_kernel(cs, true, -x));
    CHECK(s <= prev);
    CHECK(s > 0.0);
    CHECK(i_kernel(cs, false, x) >= s);
    CHECK(i_kernel(cs, false, x) == i_kernel(cs, false, -x));
    prev = s;
  }
  CHECK_THROWS_AS(i_kernel(cs, true, NAN), InvalidArgument);
}

TEST_CASE("bound triple") {
  const auto one = lemma32_bounds(CrossSection(1.0, 1.0));
  CHECK(std::abs(one.upper_ii - 3.0 * pi) < 1e-14);
  CHECK(one.lower_iii == 0.0);
  CHECK(one.vacuous);

  const auto thin = lemma32_bounds(CrossSection(0.1, 1e-13));
  CHECK(thin.lower_iii > 0.0);
  CHECK(!thin.vacuous);
  CHECK(thin.lower_iii <= thin.upper_i);
  CHECK(thin.lower_iii <= thin.upper_ii);

  const auto loose = lemma32_bounds(CrossSection(0.1, 0.01));
  CHECK(loose.lower_iii < 0.0);
  CHECK(loose.vacuous);
}

TEST_CASE("kernel bound verification") {
  const CrossSection cs(0.1, 0.01);
  const double il = 1.0 / cs.l();
  const std::vector<double> xs = {0.0, 1.0, -1.0, il, -il};
  const auto report = verify_lemma32(cs, xs);
  CHECK(report.passed);
  CHECK(report.samples.size() == xs.size());

  const std::vector<double> any = {0.0, 0.5, 7.0, -40.0};
  CHECK(verify_lemma32(CrossSection(1.0, 1.0), any).passed);

  const CrossSection thin(0.05, 5e-13);
  const std::vector<double> xt = {0.0, 1.0 / (2.0 * thin.l()), -1.0 / (2.0 * thin.l())};
  const auto r = verify_lemma32(thin, xt);
  CHECK(!r.bounds.vacuous);
  for (const auto& s : r.samples) {
    CHECK(s.lower_checked);
    CHECK(s.margin_iii > 0.0);
  }
  CHECK_THROWS_AS(verify_lemma32(cs, std::vector<double>{}), InvalidArgument);
}

TEST_CASE("scaling ratio") {
  double prev_gap = INFINITY;
  for (double c : {1e-4, 1e-8, 1e-12}) {
    const double gap = std::abs(a_c_scaling_ratio(c) - 0.5);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  const double c = 1e-12;
  const double lc = std::abs(std::log(c));
  const double ratio = a_c_scaling_ratio(c);
  CHECK(ratio <= (3.0 + lc) / (2.0 * lc));
  CHECK(ratio >= (1.0 - 5.0 / std::sqrt(lc)) / 2.0);
  CHECK_THROWS_AS(a_c_scaling_ratio(1.0), InvalidArgument);
}

namespace {
// Trapezoid over [0, 400]^2, step 0.25, of the defining double integral.
double volume_kernel_2d(double l, double d, double k) {
  const double h = 0.25;
  const int n = 1600;
  std::vector<double> sy(n + 1), sz(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double t = i * h;
    sy[i] = i == 0 ? l * l : std::pow(std::sin(l * t) / t, 2);
    sz[i] = i == 0 ? d * d : std::pow(std::sin(d * t) / t, 2);
  }
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double wy = i == 0 ? 0.5 : 1.0;
    const double y2 = (i * h) * (i * h);
    for (int j = 0; j <= n; ++j) {
      const double wz = j == 0 ? 0.5 : 1.0;
      sum += wy * wz * sy[i] * sz[j] / (k * k + y2 + (j * h) * (j * h));
    }
  }
  return 4.0 * h * h * sum;
}
}  // namespace

TEST_CASE("volume kernel") {
  const CrossSection cs(0.1, 0.05);
  const double v2 = volume_kernel(cs, 2.0).value;
  CHECK(v2 == doctest::Approx(volume_kernel_2d(0.1, 0.05, 2.0)).epsilon(1e-5));
  CHECK(v2 == doctest::Approx(0.000337159655565651754).epsilon(1e-8));
  CHECK(volume_kernel(cs, 0.01).value == doctest::Approx(0.00116599701979190175).epsilon(1e-8));
  CHECK(volume_kernel(cs, -2.0).value == v2);
  CHECK(volume_kernel(CrossSection(1e-3, 1e-6), 50.0).value == doctest::Approx(2.4624675288595325e-17).epsilon(1e-6));

  // Decreasing in |k| with a logarithmic blow-up at 0.
  double prev = INFINITY;
  for (double k : {1e-6, 1e-4, 1e-2, 1.0, 10.0}) {
    const double v = volume_kernel(cs, k).value;
    CHECK(v < prev);
    prev = v;
  }
  const double decade = volume_kernel(cs, 1e-6).value - volume_kernel(cs, 1e-5).value;
  CHECK(decade > 0.0);
  CHECK(decade == doctest::Approx(volume_kernel(cs, 1e-7).value - volume_kernel(cs, 1e-6).value).epsilon(1e-2));

  // Cell mean against a geometric midpoint rule on [0, w].
  const double w = 0.05;
  double mean = 0.0;
  double lo = 0.0;
  for (double hi = w * 1e-14; hi <= w * (1.0 + 1e-12); hi *= 1.05) {
    const double mid = lo == 0.0 ? hi / 2.0 : std::sqrt(lo * hi);
    mean += (hi - lo) * volume_kernel(cs, mid).value;
    lo = hi;
  }
  mean /= lo;
  const double m = volume_kernel_mean(cs, lo).value;
  CHECK(m == doctest::Approx(mean).epsilon(1e-3));
  CHECK(m > volume_kernel(cs, lo).value);

  CHECK_THROWS_AS(volume_kernel(cs, 0.0), InvalidArgument);
  CHECK_THROWS_AS(volume_kernel_mean(cs, 0.0), InvalidArgument);
}
