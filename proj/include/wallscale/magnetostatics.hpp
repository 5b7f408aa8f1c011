#pragma once

// Magnetostatic energy of x-dependent magnetizations in the bar
// R x [-l, l] x [-d, d].
//
// Transforms are unitary, f^(k) = (2 pi)^-1/2 int f(x) e^{-ikx} dx, evaluated
// by a DFT of the M = N - 1 samples x_0 .. x_{M-1} (period 2L). With this
// convention
//
//   E_s = (4/pi^2) int I(l,d,k) |m3^|^2 + I(d,l,k) |m2^|^2 dk
//   E_v = (4/pi^2) int K_v(l,d,k) |(m1')^|^2 dk

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "wallscale/kernels.hpp"
#include "wallscale/parallel.hpp"
#include "wallscale/quad.hpp"
#include "wallscale/walls.hpp"

namespace wallscale {

struct MagnetostaticsConfig {
  quad::QuadratureConfig quad;
  /// Also evaluate the volume-charge energy spectrally (slower).
  bool e_v_exact = false;
  Execution exec = Execution::parallel;
  /// Frequencies whose spectral mass is below cutoff * total mass are skipped.
  double spectral_cutoff = 1e-20;
};

/// Half spectrum j = 0 .. M/2 of the transverse components, of the offset
/// m* = m1 - sgn(x), and of the staggered derivative (m1_{n+1} - m1_n) / h.
struct SpectrumProfile {
  double dk = 0.0;
  std::vector<double> frequencies;
  /// 1 for j = 0 and for the Nyquist index of even M, 2 otherwise (the
  /// negative frequencies carry the same magnitudes).
  std::vector<double> weights;
  std::vector<std::complex<double>> m1_hat;
  std::vector<std::complex<double>> m2_hat;
  std::vector<std::complex<double>> m3_hat;
  std::vector<std::complex<double>> dm1_hat;

  /// sum_j weight_j |f^_j|^2 dk.
  static double mass(const std::vector<std::complex<double>>& f_hat, const std::vector<double>& weights, double dk);
};

/// Transform of one real sequence sampled with spacing h (unitary, phase
/// referenced to x_0 = -L = -M h / 2). Uses FFTW.
std::vector<std::complex<double>> unitary_half_spectrum(const std::vector<double>& samples, double h);

SpectrumProfile spectrum(const Profile1D& p);

/// Kernel values on the frequency grid j * dk, j = 0 .. count - 1. Built once,
/// then read-only.
class KernelTable {
 public:
  enum class Kind { surface_m3, surface_m2, volume };

  static KernelTable build(const CrossSection& cs, Kind kind, double dk, std::size_t count,
                           const quad::QuadratureConfig& cfg, Execution exec);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t j) const { return values_[j]; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

double e_s_spectral(const Profile1D& p, const CrossSection& cs, const MagnetostaticsConfig& cfg = {});
double e_v_spectral(const Profile1D& p, const CrossSection& cs, const MagnetostaticsConfig& cfg = {});

struct BoundaryOracleConfig {
  /// Use every stride-th node of the profile (the end nodes must be kept).
  std::size_t stride = 1;
  quad::QuadratureConfig quad{1e-13, 1e-10, 2000, 60.0};
  Execution exec = Execution::parallel;
  /// NumericalError when the self-interaction share exceeds this.
  double max_diagonal_share = 0.2;
};

struct OracleResult {
  double energy = 0.0;
  double diagonal_share = 0.0;
  std::size_t cells = 0;
  double spacing = 0.0;
};

/// Surface-charge energy (1/4pi) int int sigma sigma' / |xi - xi'| over the
/// four faces with piecewise-constant charge per node cell; the transverse
/// direction and the cell-pair integrals are done analytically or by quadrature
/// of analytic face kernels.
OracleResult e_s_boundary_oracle(const Profile1D& p, const CrossSection& cs, const BoundaryOracleConfig& cfg = {});

/// Volume-charge energy (1/4pi) int int rho rho' / |xi - xi'| with rho = m1'
/// piecewise constant between nodes.
OracleResult e_v_volume_oracle(const Profile1D& p, const CrossSection& cs, const BoundaryOracleConfig& cfg = {});

struct RichardsonResult {
  std::vector<std::size_t> nodes;
  std::vector<double> energies;
  double order = 0.0;
  double extrapolated = 0.0;
};

/// Boundary oracle on the sampled wall at three node counts whose spacings halve
/// (N_{i+1} - 1 = 2 (N_i - 1)), extrapolated with the observed order
///   p = log2((E_0 - E_1) / (E_1 - E_2)),  E* = E_2 + (E_2 - E_1) / (2^p - 1).
RichardsonResult e_s_oracle_richardson(const ClosedFormWall& w, double half_length, std::size_t coarse_nodes,
                                       const CrossSection& cs, const BoundaryOracleConfig& cfg = {});

/// Upper bound on E_v:
///   (4/pi) |m1'|^2 l^2 d^2 + 10 l d^2 (1 + ln(l/d))
///   + 20 pi l d^2 (1 + ln(l/d)) (|m*|^2 + |m1'|^2).
double e_v_upper_bound(const Profile1D& p, const CrossSection& cs);

/// sum |m1_{i+1} - m1_i|^2 / h and the trapezoid integral of (m1 - sgn x)^2.
double dm1_norm2(const Profile1D& p);
double m_star_norm2(const Profile1D& p);

struct RescalingParams {
  double lambda = 0.0;
  double mu = 0.0;

  /// lambda = 1/sqrt(c |ln c|), mu = l d / lambda. Requires c < 1.
  static RescalingParams of(const CrossSection& cs);
};

struct EnergyBreakdown {
  double exchange = 0.0;
  double e_s = 0.0;
  double e_v_bound = 0.0;
  std::optional<double> e_v_exact;
  double total_upper = 0.0;
  /// total_upper / mu; absent for c = 1 where mu = 0.
  std::optional<double> rescaled_upper;
};

EnergyBreakdown full_energy(const Profile1D& p, const CrossSection& cs, const MagnetostaticsConfig& cfg = {});

struct LipschitzReport {
  double e1 = 0.0;
  double e2 = 0.0;
  double distance = 0.0;  ///< ||m1 - m2||_{L^2(Omega)}
  double lhs = 0.0;       ///< |E(p1) - E(p2)|
  double rhs_12 = 0.0;    ///< distance^2 + 2 distance sqrt(E(p1))
  double rhs_21 = 0.0;    ///< distance^2 + 2 distance sqrt(E(p2))
  bool passed = true;
};

/// |E(p1) - E(p2)| <= ||p1 - p2||^2 + 2 ||p1 - p2|| sqrt(E(p_i)) for both
/// orderings, E = e_s (+ e_v when cfg.e_v_exact). Throws VerificationFailure
/// on a violation beyond the quadrature budget.
LipschitzReport emag_lipschitz_check(const Profile1D& p1, const Profile1D& p2, const CrossSection& cs,
                                     const MagnetostaticsConfig& cfg = {});

}  // namespace wallscale
