#include "wallscale/walls.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "wallscale/error.hpp"
#include "wallscale/format.hpp"

namespace wallscale {

namespace {

double trapezoid_weight(std::size_t i, std::size_t n) { return (i == 0 || i + 1 == n) ? 0.5 : 1.0; }

double transverse_integral(const std::vector<Vec3>& m, double h, double Vec3::*component) {
  double sum = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double v = m[i].*component;
    sum += trapezoid_weight(i, m.size()) * v * v;
  }
  return h * sum;
}

double exchange_sum(const std::vector<Vec3>& m, double h) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < m.size(); ++i) {
    const Vec3 dm = m[i + 1] - m[i];
    sum += dot(dm, dm);
  }
  return sum / h;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  const auto last = s.find_last_not_of(" \t\r");
  return first == std::string::npos ? std::string() : s.substr(first, last - first + 1);
}

}  // namespace

void ClosedFormWall::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("wall alpha must be positive and finite");
  if (!(beta != 0.0) || !std::isfinite(beta)) throw InvalidArgument("wall beta must be nonzero and finite");
  if (!std::isfinite(theta)) throw InvalidArgument("wall theta must be finite");
}

Vec3 eval_wall(const ClosedFormWall& w, double x) {
  const double s = std::sqrt(w.alpha) * x + std::log(std::abs(w.beta));
  const double sech = 1.0 / std::cosh(s);
  const double theta = w.beta < 0.0 ? w.theta + std::numbers::pi : w.theta;
  return {std::tanh(s), sech * std::cos(theta), sech * std::sin(theta)};
}

Profile1D::Profile1D(Raw, double half_length, std::vector<Vec3> values)
    : half_length_(half_length), spacing_(0.0), values_(std::move(values)) {
  if (!(half_length > 0.0) || !std::isfinite(half_length)) throw InvalidArgument("profile half-length must be positive");
  if (values_.size() < 2) throw InvalidArgument("profile needs at least two nodes");
  spacing_ = 2.0 * half_length_ / static_cast<double>(values_.size() - 1);
}

Profile1D::Profile1D(double half_length, std::vector<Vec3> values)
    : Profile1D(Raw{}, half_length, std::move(values)) {
  if (values_.size() < 3) throw InvalidArgument("profile needs at least three nodes");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double n = norm(values_[i]);
    if (!(std::abs(n - 1.0) <= 1e-12))
      throw InvalidArgument("profile node " + std::to_string(i) + " is not a unit vector (|m| = " + format_double(n) +
                            ")");
  }
  if (norm(values_.front() - Vec3{-1.0, 0.0, 0.0}) > kMaxSnap || norm(values_.back() - Vec3{1.0, 0.0, 0.0}) > kMaxSnap)
    throw InvalidArgument("profile must start at -e_x and end at +e_x");
}

Profile1D Profile1D::unchecked(double half_length, std::vector<Vec3> values) {
  return Profile1D(Raw{}, half_length, std::move(values));
}

double Profile1D::x(std::size_t i) const {
  const double last = static_cast<double>(values_.size() - 1);
  return half_length_ * ((2.0 * static_cast<double>(i) - last) / last);
}

WallSample sample_wall(const ClosedFormWall& w, double half_length, std::size_t nodes) {
  w.validate();
  if (!(half_length > 0.0) || !std::isfinite(half_length)) throw InvalidArgument("half-length must be positive");
  if (nodes < 3 || nodes % 2 == 0) throw InvalidArgument("node count must be odd and >= 3");

  std::vector<Vec3> values(nodes);
  const double last = static_cast<double>(nodes - 1);
  for (std::size_t i = 0; i < nodes; ++i)
    values[i] = eval_wall(w, half_length * ((2.0 * static_cast<double>(i) - last) / last));

  const Vec3 first = values.front();
  const Vec3 end = values.back();
  const double snap = std::max(std::abs(first.m1 + 1.0), std::abs(end.m1 - 1.0));
  const double transverse = std::max(std::hypot(first.m2, first.m3), std::hypot(end.m2, end.m3));
  if (snap > kMaxSnap || transverse > kMaxSnap)
    throw InvalidArgument("boundary snap " + format_double(snap) + " (transverse " + format_double(transverse) +
                          ") too large; increase L (sqrt(alpha) * L = " +
                          format_double(std::sqrt(w.alpha) * half_length) + ")");
  values.front() = {-1.0, 0.0, 0.0};
  values.back() = {1.0, 0.0, 0.0};
  return {Profile1D(half_length, std::move(values)), snap, transverse};
}

double exchange_integral(const Profile1D& p) { return exchange_sum(p.values(), p.spacing()); }
double m2_integral(const Profile1D& p) { return transverse_integral(p.values(), p.spacing(), &Vec3::m2); }
double m3_integral(const Profile1D& p) { return transverse_integral(p.values(), p.spacing(), &Vec3::m3); }

double DiscreteEnergy::value(const std::vector<Vec3>& m, double h) const {
  return exchange_weight * exchange_sum(m, h) + m2_weight * transverse_integral(m, h, &Vec3::m2) +
         m3_weight * transverse_integral(m, h, &Vec3::m3);
}

double DiscreteEnergy::value(const Profile1D& p) const { return value(p.values(), p.spacing()); }

std::vector<Vec3> DiscreteEnergy::gradient(const std::vector<Vec3>& m, double h) const {
  const std::size_t n = m.size();
  std::vector<Vec3> g(n);
  const double ex = 2.0 * exchange_weight / h;
  for (std::size_t i = 0; i < n; ++i) {
    Vec3 lap;
    if (i > 0) lap += m[i] - m[i - 1];
    if (i + 1 < n) lap += m[i] - m[i + 1];
    const double w = 2.0 * h * trapezoid_weight(i, n);
    g[i] = ex * lap + Vec3{0.0, w * m2_weight * m[i].m2, w * m3_weight * m[i].m3};
  }
  return g;
}

std::vector<Vec3> DiscreteEnergy::gradient(const Profile1D& p) const { return gradient(p.values(), p.spacing()); }

DiscreteEnergy alpha_energy(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("alpha must be positive and finite");
  return {1.0, alpha, alpha};
}

double reduced_energy_alpha(const Profile1D& p, double alpha) { return alpha_energy(alpha).value(p); }

double ReducedEnergy::value() const {
  if (infinite_) throw std::logic_error("value() of the infinite energy sentinel");
  return value_;
}

ReducedEnergy reduced_energy_E0(const Profile1D& p, const ReducedEnergyWeights& w) {
  if (w.forbid_m3) {
    for (const Vec3& m : p.values())
      if (std::abs(m.m3) > w.m3_tolerance) return ReducedEnergy::infinity();
  }
  return ReducedEnergy::finite(w.energy().value(p));
}

void write_profile_csv(std::ostream& out, const Profile1D& p) {
  out << "x,m1,m2,m3\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Vec3& m = p[i];
    out << format_double(p.x(i)) << ',' << format_double(m.m1) << ',' << format_double(m.m2) << ','
        << format_double(m.m3) << '\n';
  }
}

Profile1D read_profile_csv(std::istream& in, bool validate) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "x,m1,m2,m3")
    throw InvalidArgument("profile CSV must start with the header x,m1,m2,m3");
  std::vector<double> xs;
  std::vector<Vec3> values;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    std::stringstream ss(line);
    std::string field;
    double v[4];
    int k = 0;
    while (std::getline(ss, field, ',')) {
      if (k == 4) throw InvalidArgument("profile CSV row " + std::to_string(row) + " has too many fields");
      v[k++] = parse_double(field);
    }
    if (k != 4) throw InvalidArgument("profile CSV row " + std::to_string(row) + " needs 4 fields");
    xs.push_back(v[0]);
    values.push_back({v[1], v[2], v[3]});
  }
  if (xs.size() < 2) throw InvalidArgument("profile CSV needs at least two rows");
  const double half = xs.back();
  const double last = static_cast<double>(xs.size() - 1);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double expected = half * ((2.0 * static_cast<double>(i) - last) / last);
    if (!(std::abs(xs[i] - expected) <= 1e-9 * std::abs(half)))
      throw InvalidArgument("profile grid must be uniform and symmetric about 0 (row " + std::to_string(i + 2) + ")");
  }
  return validate ? Profile1D(half, std::move(values)) : Profile1D::unchecked(half, std::move(values));
}

}  // namespace wallscale
