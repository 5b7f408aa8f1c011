#pragma once

#include <cmath>

namespace wallscale {

/// Magnetization vector (m1, m2, m3) = components along (e_x, e_y, e_z).
struct Vec3 {
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;

  constexpr Vec3& operator+=(const Vec3& o) {
    m1 += o.m1;
    m2 += o.m2;
    m3 += o.m3;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    m1 -= o.m1;
    m2 -= o.m2;
    m3 -= o.m3;
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    m1 *= s;
    m2 *= s;
    m3 *= s;
    return *this;
  }
  friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
  friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.m1 * b.m1 + a.m2 * b.m2 + a.m3 * b.m3; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(const Vec3& a) { return (1.0 / norm(a)) * a; }

/// Component of g tangent to the unit sphere at m.
constexpr Vec3 tangential(const Vec3& g, const Vec3& m) { return g - dot(g, m) * m; }

}  // namespace wallscale
