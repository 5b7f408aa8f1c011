#include "wallscale/magnetostatics.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "wallscale/error.hpp"
#include "wallscale/format.hpp"

namespace wallscale {

namespace {

constexpr double pi = std::numbers::pi;

// FFTW planning is not thread-safe; execution on distinct plans is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

std::vector<double> spectral_mass(const std::vector<std::complex<double>>& f, const std::vector<double>& w, double dk) {
  std::vector<double> m(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) m[j] = w[j] * std::norm(f[j]) * dk;
  return m;
}

// (4/pi^2) sum_j K_j mass_j over the frequencies that carry mass.
double spectral_channel(const std::vector<double>& mass, const CrossSection& cs, KernelTable::Kind kind, double dk,
                        const MagnetostaticsConfig& cfg) {
  double total = 0.0;
  for (double m : mass) total += m;
  if (total == 0.0) return 0.0;
  std::size_t count = 0;
  for (std::size_t j = 0; j < mass.size(); ++j)
    if (mass[j] > cfg.spectral_cutoff * total) count = j + 1;
  const KernelTable table = KernelTable::build(cs, kind, dk, count, cfg.quad, cfg.exec);
  double sum = 0.0;
  for (std::size_t j = 0; j < count; ++j) sum += table[j] * mass[j];
  return 4.0 / (pi * pi) * sum;
}

// F(a, B) = int_0^B (B - v) / sqrt(a^2 + v^2) dv, a > 0.
double face_primitive(double a, double b) {
  return b * std::asinh(b / a) - b * b / (std::hypot(a, b) + a);
}

struct Channel {
  double width;     // transverse extent of the face, B = 2 * half-width
  double distance;  // separation of the opposite face
};

// (G_self - G_opposite)(delta) for one pair of parallel faces.
double face_pair_kernel(double delta, const Channel& ch) {
  const double a = std::abs(delta);
  return 2.0 * face_primitive(a, ch.width) - 2.0 * face_primitive(std::hypot(a, ch.distance), ch.width);
}

// int_{-H}^{H} (H - |w|) g(n H + w) dw.
double cell_pair_integral(const quad::Integrand& g, std::size_t n, double cell, const quad::QuadratureConfig& cfg) {
  const double center = static_cast<double>(n) * cell;
  const quad::Integrand f = [&](double w) { return (cell - std::abs(w)) * g(center + w); };
  const double points[] = {-cell, 0.0, cell};
  return quad::integrate_breakpoints(f, points, cfg).value;
}

std::vector<double> subsample(const Profile1D& p, std::size_t stride, double Vec3::*component) {
  if (stride == 0 || (p.size() - 1) % stride != 0)
    throw InvalidArgument("oracle stride must divide N - 1 (N = " + std::to_string(p.size()) + ")");
  std::vector<double> out;
  for (std::size_t i = 0; i < p.size(); i += stride) out.push_back(p[i].*component);
  return out;
}

OracleResult toeplitz_energy(const std::vector<double>& charges, const std::vector<double>& table, double prefactor,
                             double cell, Execution exec, double max_share) {
  OracleResult r;
  r.cells = charges.size();
  r.spacing = cell;
  double diagonal = 0.0;
  for (double s : charges) diagonal += s * s * table[0];
  const double total = par::toeplitz_form(charges, charges, table, exec);
  r.energy = prefactor * total;
  if (total == 0.0) return r;
  r.diagonal_share = diagonal / total;
  if (r.diagonal_share > max_share)
    throw NumericalError("oracle resolution too low: self-interaction is " + format_double(100.0 * r.diagonal_share) +
                         "% of the total");
  return r;
}

std::size_t support_extent(const std::vector<double>& a, const std::vector<double>& b) {
  std::size_t first = a.size();
  std::size_t last = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0.0 || b[i] != 0.0) {
      first = std::min(first, i);
      last = i;
    }
  }
  return first > last ? 0 : last - first + 1;
}

}  // namespace

double SpectrumProfile::mass(const std::vector<std::complex<double>>& f_hat, const std::vector<double>& weights,
                             double dk) {
  double s = 0.0;
  for (double m : spectral_mass(f_hat, weights, dk)) s += m;
  return s;
}

std::vector<std::complex<double>> unitary_half_spectrum(const std::vector<double>& samples, double h) {
  const std::size_t m = samples.size();
  if (m < 2) throw InvalidArgument("spectrum needs at least two samples");
  const std::size_t half = m / 2 + 1;
  double* in = fftw_alloc_real(m);
  fftw_complex* out = fftw_alloc_complex(half);
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(m), in, out, FFTW_ESTIMATE);
  }
  std::copy(samples.begin(), samples.end(), in);
  fftw_execute(plan);
  std::vector<std::complex<double>> result(half);
  const double scale = h / std::sqrt(2.0 * pi);
  for (std::size_t j = 0; j < half; ++j) {
    // e^{i k_j L} = (-1)^j for k_j = 2 pi j / (M h) and L = M h / 2.
    const double s = (j % 2 == 0) ? scale : -scale;
    result[j] = {s * out[j][0], s * out[j][1]};
  }
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);
  return result;
}

SpectrumProfile spectrum(const Profile1D& p) {
  const std::size_t m = p.size() - 1;
  if (m < 2) throw InvalidArgument("spectrum needs at least three nodes");
  const double h = p.spacing();
  std::vector<double> m1(m), m2(m), m3(m), dm1(m);
  for (std::size_t n = 0; n < m; ++n) {
    m1[n] = p[n].m1 - sign(p.x(n));
    m2[n] = p[n].m2;
    m3[n] = p[n].m3;
    dm1[n] = (p[n + 1].m1 - p[n].m1) / h;
  }
  SpectrumProfile s;
  s.dk = pi / p.half_length();
  s.m1_hat = unitary_half_spectrum(m1, h);
  s.m2_hat = unitary_half_spectrum(m2, h);
  s.m3_hat = unitary_half_spectrum(m3, h);
  s.dm1_hat = unitary_half_spectrum(dm1, h);
  const std::size_t half = s.m2_hat.size();
  s.frequencies.resize(half);
  s.weights.assign(half, 2.0);
  for (std::size_t j = 0; j < half; ++j) s.frequencies[j] = static_cast<double>(j) * s.dk;
  s.weights[0] = 1.0;
  if (m % 2 == 0) s.weights[half - 1] = 1.0;
  return s;
}

KernelTable KernelTable::build(const CrossSection& cs, Kind kind, double dk, std::size_t count,
                               const quad::QuadratureConfig& cfg, Execution exec) {
  if (!(dk > 0.0) || !std::isfinite(dk)) throw InvalidArgument("frequency spacing must be positive");
  const auto f = [&](std::size_t j) -> double {
    const double k = static_cast<double>(j) * dk;
    switch (kind) {
      case Kind::surface_m2:
        return i_kernel(cs, true, k, cfg);
      case Kind::surface_m3:
        return i_kernel(cs, false, k, cfg);
      case Kind::volume:
        return j == 0 ? volume_kernel_mean(cs, 0.5 * dk, cfg).value : volume_kernel(cs, k, cfg).value;
    }
    return 0.0;
  };
  KernelTable t;
  t.values_ = par::map(count, f, exec);
  return t;
}

double e_s_spectral(const Profile1D& p, const CrossSection& cs, const MagnetostaticsConfig& cfg) {
  const SpectrumProfile s = spectrum(p);
  const double e2 = spectral_channel(spectral_mass(s.m2_hat, s.weights, s.dk), cs, KernelTable::Kind::surface_m2,
                                     s.dk, cfg);
  const double e3 = spectral_channel(spectral_mass(s.m3_hat, s.weights, s.dk), cs, KernelTable::Kind::surface_m3,
                                     s.dk, cfg);
  return e2 + e3;
}

double e_v_spectral(const Profile1D& p, const CrossSection& cs, const MagnetostaticsConfig& cfg) {
  const SpectrumProfile s = spectrum(p);
  return spectral_channel(spectral_mass(s.dm1_hat, s.weights, s.dk), cs, KernelTable::Kind::volume, s.dk, cfg);
}

OracleResult e_s_boundary_oracle(const Profile1D& p, const CrossSection& cs, const BoundaryOracleConfig& cfg) {
  cfg.quad.validate();
  const std::vector<double> m2 = subsample(p, cfg.stride, &Vec3::m2);
  const std::vector<double> m3 = subsample(p, cfg.stride, &Vec3::m3);
  const double cell = p.spacing() * static_cast<double>(cfg.stride);
  const std::size_t extent = support_extent(m2, m3);

  OracleResult total;
  total.cells = m2.size();
  total.spacing = cell;
  double diagonal = 0.0;
  double energy = 0.0;
  const Channel channels[] = {{2.0 * cs.d(), 2.0 * cs.l()}, {2.0 * cs.l(), 2.0 * cs.d()}};
  const std::vector<double>* charges[] = {&m2, &m3};
  for (int c = 0; c < 2; ++c) {
    const std::vector<double>& sigma = *charges[c];
    if (std::all_of(sigma.begin(), sigma.end(), [](double v) { return v == 0.0; })) continue;
    const Channel ch = channels[c];
    quad::QuadratureConfig qc = cfg.quad;
    qc.abs_tol *= cell * cell * ch.width;
    const quad::Integrand g = [ch](double delta) { return face_pair_kernel(delta, ch); };
    std::vector<double> table = par::map(
        extent, [&](std::size_t n) { return cell_pair_integral(g, n, cell, qc); }, cfg.exec);
    table.resize(sigma.size(), 0.0);
    const OracleResult r = toeplitz_energy(sigma, table, 2.0 / (4.0 * pi), cell, cfg.exec, 1.0);
    energy += r.energy;
    diagonal += r.diagonal_share * r.energy;
  }
  total.energy = energy;
  if (energy > 0.0) {
    total.diagonal_share = diagonal / energy;
    if (total.diagonal_share > cfg.max_diagonal_share)
      throw NumericalError("oracle resolution too low: self-interaction is " +
                           format_double(100.0 * total.diagonal_share) + "% of the total");
  }
  return total;
}

OracleResult e_v_volume_oracle(const Profile1D& p, const CrossSection& cs, const BoundaryOracleConfig& cfg) {
  cfg.quad.validate();
  const std::vector<double> m1 = subsample(p, cfg.stride, &Vec3::m1);
  const double cell = p.spacing() * static_cast<double>(cfg.stride);
  std::vector<double> rho(m1.size() - 1);
  for (std::size_t i = 0; i + 1 < m1.size(); ++i) rho[i] = (m1[i + 1] - m1[i]) / cell;

  const double two_l = 2.0 * cs.l();
  const double two_d = 2.0 * cs.d();
  quad::QuadratureConfig inner = cfg.quad;
  inner.abs_tol *= two_l * two_l * two_d;
  const quad::Integrand g = [&](double delta) {
    const quad::Integrand f = [&](double u) { return (two_l - u) * face_primitive(std::hypot(delta, u), two_d); };
    return 4.0 * quad::integrate_finite(f, 0.0, two_l, inner).value;
  };
  quad::QuadratureConfig outer = cfg.quad;
  outer.abs_tol *= cell * cell * two_l * two_l * two_d;
  const std::size_t extent = support_extent(rho, rho);
  std::vector<double> table =
      par::map(extent, [&](std::size_t n) { return cell_pair_integral(g, n, cell, outer); }, cfg.exec);
  table.resize(rho.size(), 0.0);
  return toeplitz_energy(rho, table, 1.0 / (4.0 * pi), cell, cfg.exec, cfg.max_diagonal_share);
}

RichardsonResult e_s_oracle_richardson(const ClosedFormWall& w, double half_length, std::size_t coarse_nodes,
                                       const CrossSection& cs, const BoundaryOracleConfig& cfg) {
  RichardsonResult r;
  std::size_t n = coarse_nodes;
  for (int i = 0; i < 3; ++i) {
    const Profile1D p = sample_wall(w, half_length, n).profile;
    r.nodes.push_back(n);
    r.energies.push_back(e_s_boundary_oracle(p, cs, cfg).energy);
    n = 2 * (n - 1) + 1;
  }
  const double d01 = r.energies[0] - r.energies[1];
  const double d12 = r.energies[1] - r.energies[2];
  if (!(d01 / d12 > 1.0) || !std::isfinite(d01 / d12))
    throw NumericalError("oracle refinement is not in the asymptotic range (differences " + format_double(d01) +
                         ", " + format_double(d12) + ")");
  r.order = std::log2(d01 / d12);
  r.extrapolated = r.energies[2] + (r.energies[2] - r.energies[1]) / (std::exp2(r.order) - 1.0);
  return r;
}

double dm1_norm2(const Profile1D& p) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const double d = p[i + 1].m1 - p[i].m1;
    s += d * d;
  }
  return s / p.spacing();
}

double m_star_norm2(const Profile1D& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double v = p[i].m1 - sign(p.x(i));
    s += ((i == 0 || i + 1 == p.size()) ? 0.5 : 1.0) * v * v;
  }
  return s * p.spacing();
}

double e_v_upper_bound(const Profile1D& p, const CrossSection& cs) {
  const double l = cs.l();
  const double d = cs.d();
  const double dm = dm1_norm2(p);
  const double ms = m_star_norm2(p);
  const double log_term = 1.0 + std::log(l / d);
  const double i1 = 4.0 / pi * dm * l * l * d * d + 10.0 * l * d * d * log_term;
  const double i2 = 20.0 * pi * l * d * d * log_term * (ms + dm);
  return i1 + i2;
}

RescalingParams RescalingParams::of(const CrossSection& cs) {
  const double c = cs.c();
  if (!(c < 1.0)) throw InvalidArgument("rescaling requires c < 1");
  RescalingParams r;
  r.lambda = 1.0 / std::sqrt(c * std::abs(std::log(c)));
  r.mu = cs.l() * cs.d() / r.lambda;
  return r;
}

EnergyBreakdown full_energy(const Profile1D& p, const CrossSection& cs, const MagnetostaticsConfig& cfg) {
  EnergyBreakdown e;
  e.exchange = 4.0 * cs.l() * cs.d() * exchange_integral(p);
  e.e_s = e_s_spectral(p, cs, cfg);
  e.e_v_bound = e_v_upper_bound(p, cs);
  if (cfg.e_v_exact) e.e_v_exact = e_v_spectral(p, cs, cfg);
  e.total_upper = e.exchange + e.e_s + e.e_v_bound;
  if (cs.c() < 1.0) e.rescaled_upper = e.total_upper / RescalingParams::of(cs).mu;
  return e;
}

LipschitzReport emag_lipschitz_check(const Profile1D& p1, const Profile1D& p2, const CrossSection& cs,
                                     const MagnetostaticsConfig& cfg) {
  if (p1.size() != p2.size() || p1.half_length() != p2.half_length())
    throw InvalidArgument("profiles must share the grid");
  const auto emag = [&](const Profile1D& p) {
    double e = e_s_spectral(p, cs, cfg);
    if (cfg.e_v_exact) e += e_v_spectral(p, cs, cfg);
    return e;
  };
  LipschitzReport r;
  r.e1 = emag(p1);
  r.e2 = emag(p2);
  double line = 0.0;
  for (std::size_t n = 0; n + 1 < p1.size(); ++n) {
    const Vec3 d = p1[n] - p2[n];
    line += dot(d, d);
  }
  r.distance = std::sqrt(4.0 * cs.l() * cs.d() * p1.spacing() * line);
  r.lhs = std::abs(r.e1 - r.e2);
  r.rhs_12 = r.distance * r.distance + 2.0 * r.distance * std::sqrt(r.e1);
  r.rhs_21 = r.distance * r.distance + 2.0 * r.distance * std::sqrt(r.e2);
  const double budget = 10.0 * cfg.quad.rel_tol * (r.e1 + r.e2);
  r.passed = r.lhs <= r.rhs_12 + budget && r.lhs <= r.rhs_21 + budget;
  if (!r.passed)
    throw VerificationFailure("magnetostatic Lipschitz inequality violated: |dE| = " + format_double(r.lhs) +
                              ", bounds " + format_double(r.rhs_12) + " and " + format_double(r.rhs_21));
  return r;
}

}  // namespace wallscale
