#pragma once

#include <optional>
#include <string>
#include <utility>

#include "lks/quaternion.hpp"

namespace lks {

// Defining vector c and auxiliary vector f (f orthogonal to c).
class KSFrame {
 public:
  KSFrame(const UnitVector3& c, const UnitVector3& f);

  static KSFrame ks1();  // c = e1, f = -e3
  static KSFrame ks3();  // c = e3, f = e1

  const UnitVector3& c() const noexcept { return c_; }
  const UnitVector3& f() const noexcept { return f_; }
  Quaternion c_quat() const noexcept { return Quaternion::pure(c_.vec()); }

 private:
  UnitVector3 c_;
  UnitVector3 f_;
};

// alpha(S) = k1 * S^k2, with k1 > 0.
class GaugeAlpha {
 public:
  GaugeAlpha(double k1, double k2);

  static GaugeAlpha constant(double k1 = 1.0) { return {k1, 0.0}; }
  static GaugeAlpha sqrt8S() { return {std::sqrt(8.0), 0.5}; }
  static GaugeAlpha mu_over_S(double mu) { return {mu, -1.0}; }
  // "const", "sqrt8S" or "mu_over_S".
  static GaugeAlpha from_name(const std::string& name, double mu);

  double k1() const noexcept { return k1_; }
  double k2() const noexcept { return k2_; }

  double alpha(double S) const;
  double dalpha_dS(double S) const;
  double omega(double S) const;
  double domega_dS(double S) const;
  // (S / alpha) d(alpha)/dS, identically k2.
  double log_slope() const noexcept { return k2_; }

 private:
  double k1_;
  double k2_;
};

struct CartesianPhaseExt {
  double x_star = 0.0;  // time-like coordinate
  Vec3 x;
  double X_star = 0.0;  // energy-like momentum S
  Vec3 X;
};

struct KSPhase {
  double v_star = 0.0;
  Quaternion v;
  double V_star = 0.0;
  Quaternion V;
};

inline constexpr double kManifoldTolerance = 1e-9;

Vec3 ks_map(const Quaternion& v, const KSFrame& frame, double alpha);

// Pure-quaternion fibre representative along the bisector of c and xhat.
Quaternion sks_vector(const Vec3& x, const KSFrame& frame, double alpha, double tol = 1e-12);

// v_s q(-phi): walks the fibre of ks_map(v_s).
Quaternion fibre_point(const Quaternion& v_s, const KSFrame& frame, double phi);

double bilinear_J(const Quaternion& v, const Quaternion& w, const KSFrame& frame);

// V = 2 X v conj(c) / alpha.
Quaternion momentum_lift(const Vec3& X, const Quaternion& v, const KSFrame& frame, double alpha);
// X = V c conj(v) / (2 r); the scalar part equals J(v, V) / (2 r).
Quaternion momentum_project(const Quaternion& V, const Quaternion& v, const KSFrame& frame, double alpha);

double omega(double S, const GaugeAlpha& gauge);

KSPhase lift_cartesian(const CartesianPhaseExt& p, const KSFrame& frame, const GaugeAlpha& gauge,
                       const std::optional<Quaternion>& representative = std::nullopt);

CartesianPhaseExt project_ks(const KSPhase& k, const KSFrame& frame, const GaugeAlpha& gauge,
                             double manifold_tol = kManifoldTolerance);

double hamiltonian_K0(const KSPhase& k, const KSFrame& frame, const GaugeAlpha& gauge, double mu);

// Orthonormal basis (u, u (0, f)) of a Levi-Civita plane.
std::pair<Quaternion, Quaternion> lc_plane_basis(const Quaternion& u, const UnitVector3& f,
                                                 const KSFrame& frame);

struct PlaneTriad {
  UnitVector3 x1;
  UnitVector3 x2;
  UnitVector3 x3;
};

// Image of the LC plane spanned by u and u (0, f): x1 = u c conj(u), x2 = u (f x c) conj(u), x3 = x1 x x2.
PlaneTriad lc_plane_image(const Quaternion& u, const UnitVector3& f, const KSFrame& frame);
// Closed forms of the plane normal u (0, f) conj(u) and of c . x3.
Vec3 lc_plane_normal(const Quaternion& u, const UnitVector3& f);
double lc_plane_tilt_cosine(const Quaternion& u, const UnitVector3& f, const KSFrame& frame);

// tan(beta) = sqrt((1 - cx)/2) tan(phi), beta in the quadrant of phi.
double position_angle_beta(double phi, double cx);

}  // namespace lks
