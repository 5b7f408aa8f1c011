#pragma once

// Minimization of discrete reduced energies on (S^2)^N and of the full
// rescaled energy over the scaled closed-form family m0(x / s).

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "wallscale/kernels.hpp"
#include "wallscale/magnetostatics.hpp"
#include "wallscale/walls.hpp"

namespace wallscale {

struct DescentConfig {
  /// First trial step; later steps are Barzilai-Borwein estimates.
  double step = 1e-4;
  /// Stop when the L^2 norm of the projected gradient drops below this.
  double grad_tol = 1e-7;
  std::size_t max_iters = 200000;
  double backtrack_factor = 0.5;
  double armijo = 1e-4;
  std::size_t max_backtracks = 60;
  bool record_trace = false;

  void validate() const;
};

struct TraceRow {
  std::size_t iteration = 0;
  double energy = 0.0;
  double grad_norm = 0.0;
};

struct DescentResult {
  Profile1D profile;
  double energy = 0.0;
  double initial_energy = 0.0;
  double grad_norm = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  /// Energy after every accepted step (always recorded).
  std::vector<double> energy_history;
  /// Filled when DescentConfig::record_trace is set.
  std::vector<TraceRow> trace;
};

/// Projected gradient descent: nodes move along g - (g.m) m, are renormalized,
/// the end nodes never move. Throws NumericalError on a stall or a non-finite
/// energy.
DescentResult minimize_reduced(const Profile1D& init, const DiscreteEnergy& energy, const DescentConfig& cfg = {});
DescentResult minimize_reduced(const Profile1D& init, double alpha, const DescentConfig& cfg = {});
/// E_0: m3 stays identically zero along the descent when it starts at zero;
/// otherwise InvalidArgument.
DescentResult minimize_reduced(const Profile1D& init, const ReducedEnergyWeights& weights,
                               const DescentConfig& cfg = {});

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);

/// Great-circle path (sin(pi/2 s), cos(pi/2 s), 0), s = clamp(x / width, -1, 1).
Profile1D arc_profile(double half_length, std::size_t nodes, double width);

struct RecenterReport {
  double center = 0.0;  ///< interpolated zero of m1
  double theta = 0.0;   ///< transverse angle at the node nearest the center
  double max_deviation = 0.0;
};

/// Max node distance between p and the closed-form wall of parameter alpha
/// translated to the zero of m1 and rotated to the observed angle.
RecenterReport compare_recentered(const Profile1D& p, double alpha);

struct AnsatzConfig {
  MagnetostaticsConfig magnetostatics;
  std::size_t nodes = 1025;
  std::size_t golden_depth = 30;
};

struct AnsatzProbe {
  double scale = 0.0;
  double energy = 0.0;
};

struct AnsatzSearchResult {
  double best_scale = 0.0;
  double best_beta = 1.0;
  double energy = 0.0;  ///< rescaled total upper energy at best_scale
  std::size_t evaluations = 0;
  EnergyBreakdown breakdown;
  std::vector<AnsatzProbe> probes;
};

/// Profile m0(x / s) on [-20 sqrt(pi) s, 20 sqrt(pi) s].
Profile1D ansatz_profile(double scale, std::size_t nodes);

/// lambda 2^{k/2}, k = -4 .. 4.
std::vector<double> default_scale_grid(const CrossSection& cs);

/// Rescaled energy (E_ex + E_s + E_v bound) / mu over the family m0(x / s):
/// grid search, then golden-section refinement in log s around the best grid
/// point. An empty grid means default_scale_grid. Requires c < 1.
AnsatzSearchResult minimize_full_ansatz(const CrossSection& cs, const std::vector<double>& scale_grid = {},
                                        const AnsatzConfig& cfg = {});

}  // namespace wallscale
