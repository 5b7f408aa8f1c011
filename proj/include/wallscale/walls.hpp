#pragma once

// Transverse walls m^{alpha,beta,theta}, sampled profiles on [-L, L], and the
// reduced one-dimensional energies
//
//   E_alpha(m) = int |m'|^2 + alpha int (m2^2 + m3^2)
//   E_0(m)     = 4 int |m'|^2 + (4/pi) int m2^2     (+inf unless m3 = 0)

#include <cstddef>
#include <iosfwd>
#include <numbers>
#include <vector>

#include "wallscale/vec3.hpp"

namespace wallscale {

struct ClosedFormWall {
  double alpha = 1.0;
  double beta = 1.0;
  double theta = 0.0;

  void validate() const;
};

/// m1 = tanh(sqrt(alpha) x + ln|beta|), (m2, m3) = sech(.) (cos, sin)(theta'),
/// theta' = theta for beta > 0 and theta + pi for beta < 0.
Vec3 eval_wall(const ClosedFormWall& w, double x);

/// Magnetization sampled on the uniform grid x_i = -L + i h, h = 2L / (N - 1).
class Profile1D {
 public:
  /// Validated: N >= 3, unit norm per node within 1e-12, first node -e_x and
  /// last node +e_x within 1e-6.
  Profile1D(double half_length, std::vector<Vec3> values);

  /// No sphere or boundary checks (only a positive length and N >= 2). For
  /// raw evaluations such as a uniform field.
  static Profile1D unchecked(double half_length, std::vector<Vec3> values);

  double half_length() const { return half_length_; }
  std::size_t size() const { return values_.size(); }
  double spacing() const { return spacing_; }
  double x(std::size_t i) const;
  const Vec3& operator[](std::size_t i) const { return values_[i]; }
  const std::vector<Vec3>& values() const { return values_; }

 private:
  struct Raw {};
  Profile1D(Raw, double half_length, std::vector<Vec3> values);

  double half_length_;
  double spacing_;
  std::vector<Vec3> values_;
};

struct WallSample {
  Profile1D profile;
  /// Largest |m1(+-L) -+ 1| removed when pinning the end nodes to +-e_x.
  double snap = 0.0;
  /// Largest transverse magnitude removed at the end nodes.
  double transverse_snap = 0.0;
};

constexpr double kMaxSnap = 1e-6;

/// Samples w at N (odd, >= 3) nodes on [-L, L] and pins the ends to -+e_x.
/// Throws InvalidArgument when either snap exceeds kMaxSnap.
WallSample sample_wall(const ClosedFormWall& w, double half_length, std::size_t nodes);

/// sum |m_{i+1} - m_i|^2 / h.
double exchange_integral(const Profile1D& p);
/// Trapezoid integrals of m2^2 and m3^2.
double m2_integral(const Profile1D& p);
double m3_integral(const Profile1D& p);

/// Discrete quadratic energy
///   exchange_weight * exchange_integral + m2_weight * int m2^2 + m3_weight * int m3^2.
struct DiscreteEnergy {
  double exchange_weight = 1.0;
  double m2_weight = 1.0;
  double m3_weight = 1.0;

  double value(const Profile1D& p) const;
  /// Euclidean gradient with respect to the node values.
  std::vector<Vec3> gradient(const Profile1D& p) const;
  std::vector<Vec3> gradient(const std::vector<Vec3>& m, double h) const;
  double value(const std::vector<Vec3>& m, double h) const;
};

DiscreteEnergy alpha_energy(double alpha);

double reduced_energy_alpha(const Profile1D& p, double alpha);

struct ReducedEnergyWeights {
  double exchange_weight = 4.0;
  double transverse_weight = 4.0 * (1.0 / std::numbers::pi);
  bool forbid_m3 = true;
  double m3_tolerance = 1e-9;

  DiscreteEnergy energy() const { return {exchange_weight, transverse_weight, transverse_weight}; }
};

/// Either a finite energy or the +infinity of an inadmissible profile. The
/// infinite case never takes part in floating-point arithmetic.
class ReducedEnergy {
 public:
  static ReducedEnergy finite(double v) { return ReducedEnergy(false, v); }
  static ReducedEnergy infinity() { return ReducedEnergy(true, 0.0); }

  bool is_infinite() const { return infinite_; }
  /// Throws std::logic_error for the infinite sentinel.
  double value() const;

  friend bool operator==(const ReducedEnergy& a, const ReducedEnergy& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend bool operator<(const ReducedEnergy& a, const ReducedEnergy& b) {
    if (a.infinite_) return false;
    return b.infinite_ || a.value_ < b.value_;
  }

 private:
  ReducedEnergy(bool inf, double v) : infinite_(inf), value_(v) {}
  bool infinite_;
  double value_;
};

ReducedEnergy reduced_energy_E0(const Profile1D& p, const ReducedEnergyWeights& w = {});

/// CSV with header "x,m1,m2,m3"; values at full round-trip precision.
void write_profile_csv(std::ostream& out, const Profile1D& p);
/// Parses the CSV above; the grid must be uniform and symmetric about 0.
/// With validate = false the profile is built through Profile1D::unchecked.
Profile1D read_profile_csv(std::istream& in, bool validate = true);

}  // namespace wallscale
