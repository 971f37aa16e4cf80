#include "lks/ks_transform.hpp"

#include <cmath>
#include <limits>

#include "lks/errors.hpp"

namespace lks {

KSFrame::KSFrame(const UnitVector3& c, const UnitVector3& f) : c_(c), f_(f) {
  if (std::abs(dot(c_.vec(), f_.vec())) >= 1e-12) fail(ErrorKind::InvalidArgument, "frame vectors c and f must be orthogonal");
}

KSFrame KSFrame::ks1() { return {UnitVector3::e1(), UnitVector3(0, 0, -1)}; }
KSFrame KSFrame::ks3() { return {UnitVector3::e3(), UnitVector3::e1()}; }

GaugeAlpha::GaugeAlpha(double k1, double k2) : k1_(k1), k2_(k2) {
  if (!(k1 > 0.0) || !std::isfinite(k1) || !std::isfinite(k2))
    fail(ErrorKind::InvalidArgument, "gauge requires k1 > 0 and finite k2");
}

GaugeAlpha GaugeAlpha::from_name(const std::string& name, double mu) {
  if (name == "const") return constant();
  if (name == "sqrt8S") return sqrt8S();
  if (name == "mu_over_S") return mu_over_S(mu);
  fail(ErrorKind::InvalidArgument, "unknown gauge '" + name + "'");
}

static void require_positive_energy(double S) {
  if (!(S > 0.0)) fail(ErrorKind::NonpositiveEnergy, "energy action S must be positive");
}

double GaugeAlpha::alpha(double S) const {
  require_positive_energy(S);
  return k2_ == 0.0 ? k1_ : k1_ * std::pow(S, k2_);
}

double GaugeAlpha::dalpha_dS(double S) const { return k2_ * alpha(S) / S; }

double GaugeAlpha::omega(double S) const { return 2.0 * std::sqrt(2.0 * S) / alpha(S); }

double GaugeAlpha::domega_dS(double S) const { return omega(S) * (0.5 - k2_) / S; }

double omega(double S, const GaugeAlpha& gauge) { return gauge.omega(S); }

Vec3 ks_map(const Quaternion& v, const KSFrame& frame, double alpha) {
  const Quaternion p = mul(mul(v, frame.c_quat()), conjugate(v));
  return p.v / alpha;
}

Quaternion sks_vector(const Vec3& x, const KSFrame& frame, double alpha, double tol) {
  const double r = norm(x);
  if (!(r > 0.0)) fail(ErrorKind::ZeroRadius, "SKS vector of the origin is undefined");
  const Vec3 bisector = frame.c().vec() + x / r;
  const double b = norm(bisector);
  if (b < tol)
    fail(ErrorKind::AntipodalDegeneracy,
         "position antipodal to the defining vector: supply an explicit fibre representative");
  return Quaternion::pure(std::sqrt(alpha * r) / b * bisector);
}

Quaternion fibre_point(const Quaternion& v_s, const KSFrame& frame, double phi) {
  return mul(v_s, rotor_q(frame.c(), -phi));
}

double bilinear_J(const Quaternion& v, const Quaternion& w, const KSFrame& frame) {
  const Vec3& c = frame.c().vec();
  return -v.s0 * dot(w.v, c) + w.s0 * dot(v.v, c) + dot(cross(v.v, w.v), c);
}

Quaternion momentum_lift(const Vec3& X, const Quaternion& v, const KSFrame& frame, double alpha) {
  if (!(norm2(v) > 0.0)) fail(ErrorKind::ZeroQuaternion, "momentum lift needs a nonzero KS quaternion");
  return (2.0 / alpha) * mul(mul(Quaternion::pure(X), v), conjugate(frame.c_quat()));
}

Quaternion momentum_project(const Quaternion& V, const Quaternion& v, const KSFrame& frame, double alpha) {
  const double vv = norm2(v);
  if (!(vv > 0.0)) fail(ErrorKind::ZeroQuaternion, "momentum projection needs a nonzero KS quaternion");
  const double r = vv / alpha;
  return mul(mul(V, frame.c_quat()), conjugate(v)) / (2.0 * r);
}

KSPhase lift_cartesian(const CartesianPhaseExt& p, const KSFrame& frame, const GaugeAlpha& gauge,
                       const std::optional<Quaternion>& representative) {
  const double S = p.X_star;
  const double a = gauge.alpha(S);
  Quaternion v;
  if (representative) {
    v = *representative;
    const Vec3 back = ks_map(v, frame, a);
    if (norm(back - p.x) > 1e-10 * std::max(1.0, norm(p.x)))
      fail(ErrorKind::InvalidArgument, "fibre representative does not map onto the position");
  } else {
    v = sks_vector(p.x, frame, a);
  }
  KSPhase k;
  k.v = v;
  k.V = momentum_lift(p.X, v, frame, a);
  k.V_star = S;
  const double Q = gauge.log_slope() * dot(k.v, k.V) / 2.0;
  k.v_star = p.x_star + Q / S;
  return k;
}

CartesianPhaseExt project_ks(const KSPhase& k, const KSFrame& frame, const GaugeAlpha& gauge,
                             double manifold_tol) {
  const double S = k.V_star;
  const double a = gauge.alpha(S);
  if (!(norm2(k.v) > 0.0)) fail(ErrorKind::ZeroQuaternion, "projection of the zero KS quaternion");
  const double J = bilinear_J(k.v, k.V, frame);
  if (std::abs(J) > manifold_tol * std::max(1.0, norm(k.v) * norm(k.V)))
    fail(ErrorKind::ManifoldViolation, "KS phase point is off the J(v, V) = 0 manifold");
  CartesianPhaseExt p;
  p.x = ks_map(k.v, frame, a);
  p.X = momentum_project(k.V, k.v, frame, a).v;
  p.X_star = S;
  const double Q = gauge.log_slope() * dot(k.v, k.V) / 2.0;
  p.x_star = k.v_star - Q / S;
  return p;
}

double hamiltonian_K0(const KSPhase& k, const KSFrame& frame, const GaugeAlpha& gauge, double mu) {
  const double S = k.V_star;
  const double a = gauge.alpha(S);
  const double w = gauge.omega(S);
  const double vv = norm2(k.v);
  double h = norm2(k.V) / 2.0 + w * w * vv / 2.0 - 4.0 * mu / a;
  if (vv > 0.0) {
    const double J = bilinear_J(k.v, k.V, frame);
    h += a * J * J / (2.0 * vv);
  }
  return h;
}

static void require_plane_inputs(const Quaternion& u, const UnitVector3& f, const KSFrame& frame) {
  if (std::abs(norm(u) - 1.0) > 1e-12) fail(ErrorKind::InvalidArgument, "LC plane basis needs a unit quaternion");
  if (std::abs(dot(f.vec(), frame.c().vec())) > 1e-12)
    fail(ErrorKind::InvalidArgument, "auxiliary vector must be orthogonal to the defining vector");
}

std::pair<Quaternion, Quaternion> lc_plane_basis(const Quaternion& u, const UnitVector3& f,
                                                 const KSFrame& frame) {
  require_plane_inputs(u, f, frame);
  return {u, mul(u, Quaternion::pure(f.vec()))};
}

PlaneTriad lc_plane_image(const Quaternion& u, const UnitVector3& f, const KSFrame& frame) {
  require_plane_inputs(u, f, frame);
  const Vec3 b = cross(f.vec(), frame.c().vec());
  const Vec3 x1 = mul(mul(u, frame.c_quat()), conjugate(u)).v;
  const Vec3 x2 = mul(mul(u, Quaternion::pure(b)), conjugate(u)).v;
  const UnitVector3 e1(x1);
  const UnitVector3 e2(x2);
  return {e1, e2, UnitVector3(cross(e1.vec(), e2.vec()))};
}

Vec3 lc_plane_normal(const Quaternion& u, const UnitVector3& f) {
  const Vec3& fv = f.vec();
  return (2.0 * u.s0 * u.s0 - 1.0) * fv + 2.0 * dot(u.v, fv) * u.v + 2.0 * u.s0 * cross(u.v, fv);
}

double lc_plane_tilt_cosine(const Quaternion& u, const UnitVector3& f, const KSFrame& frame) {
  const Vec3& c = frame.c().vec();
  return 2.0 * dot(u.v, f.vec()) * dot(u.v, c) - 2.0 * u.s0 * dot(u.v, cross(c, f.vec()));
}

double position_angle_beta(double phi, double cx) {
  if (!(std::abs(cx) <= 1.0)) fail(ErrorKind::InvalidArgument, "cosine c.xhat outside [-1, 1]");
  const double k = std::sqrt((1.0 - cx) / 2.0);
  return std::atan2(k * std::sin(phi), std::cos(phi));
}

}  // namespace lks
