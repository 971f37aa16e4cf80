#pragma once

#include <array>
#include <cmath>

namespace lks {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  friend constexpr Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
  friend constexpr Vec3 operator*(const Vec3& a, double s) { return s * a; }
  friend constexpr Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }
  constexpr Vec3& operator+=(const Vec3& b) { return *this = *this + b; }
  constexpr Vec3& operator-=(const Vec3& b) { return *this = *this - b; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// Direction of unit length. Normalized once on construction; the zero vector is rejected.
class UnitVector3 {
 public:
  explicit UnitVector3(const Vec3& v);
  UnitVector3(double x, double y, double z) : UnitVector3(Vec3{x, y, z}) {}

  static UnitVector3 e1() { return UnitVector3(Vec3{1, 0, 0}); }
  static UnitVector3 e2() { return UnitVector3(Vec3{0, 1, 0}); }
  static UnitVector3 e3() { return UnitVector3(Vec3{0, 0, 1}); }

  const Vec3& vec() const noexcept { return v_; }
  operator const Vec3&() const noexcept { return v_; }
  double operator[](int i) const { return v_[i]; }

 private:
  Vec3 v_;
};

struct Quaternion {
  double s0 = 0.0;
  Vec3 v;

  constexpr Quaternion() = default;
  constexpr Quaternion(double scalar, const Vec3& vector) : s0(scalar), v(vector) {}
  constexpr Quaternion(double a0, double a1, double a2, double a3) : s0(a0), v{a1, a2, a3} {}

  static constexpr Quaternion pure(const Vec3& vector) { return {0.0, vector}; }
  static constexpr Quaternion scalar(double s) { return {s, Vec3{}}; }

  // Components in (s0, v1, v2, v3) order.
  constexpr double operator[](int i) const { return i == 0 ? s0 : v[i - 1]; }
  constexpr std::array<double, 4> components() const { return {s0, v.x, v.y, v.z}; }

  constexpr bool is_pure() const { return s0 == 0.0; }

  friend constexpr Quaternion operator+(const Quaternion& a, const Quaternion& b) { return {a.s0 + b.s0, a.v + b.v}; }
  friend constexpr Quaternion operator-(const Quaternion& a, const Quaternion& b) { return {a.s0 - b.s0, a.v - b.v}; }
  friend constexpr Quaternion operator-(const Quaternion& a) { return {-a.s0, -a.v}; }
  friend constexpr Quaternion operator*(double s, const Quaternion& a) { return {s * a.s0, s * a.v}; }
  friend constexpr Quaternion operator*(const Quaternion& a, double s) { return s * a; }
  friend constexpr Quaternion operator/(const Quaternion& a, double s) { return {a.s0 / s, a.v / s}; }
  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

constexpr Quaternion mul(const Quaternion& u, const Quaternion& w) {
  return {u.s0 * w.s0 - dot(u.v, w.v), u.s0 * w.v + w.s0 * u.v + cross(u.v, w.v)};
}
constexpr Quaternion operator*(const Quaternion& u, const Quaternion& w) { return mul(u, w); }

constexpr Quaternion conjugate(const Quaternion& q) { return {q.s0, -q.v}; }

// Quaternion cross product (v conj(u) - u conj(v))/2; the scalar part is 0 by construction.
constexpr Quaternion cross(const Quaternion& u, const Quaternion& w) {
  return {0.0, u.s0 * w.v - w.s0 * u.v + cross(u.v, w.v)};
}

// Euclidean inner product on R^4.
constexpr double dot(const Quaternion& a, const Quaternion& b) { return a.s0 * b.s0 + dot(a.v, b.v); }
constexpr double norm2(const Quaternion& q) { return dot(q, q); }
inline double norm(const Quaternion& q) { return std::sqrt(norm2(q)); }

// (cos phi, sin phi c): right multiplication by rotor_q(c, -phi) walks the fibre.
Quaternion rotor_q(const UnitVector3& c, double phi);
// (cos phi, sin phi xhat): left-acting twin of rotor_q about the physical direction.
Quaternion rotor_p(const UnitVector3& xhat, double phi);

}  // namespace lks
