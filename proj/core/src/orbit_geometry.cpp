#include "lks/orbit_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lks/errors.hpp"

namespace lks {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_positive(double a) {
  double w = std::fmod(a, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  return w;
}

// Oriented angle from a to b about the axis n.
double oriented_angle(const Vec3& a, const Vec3& b, const Vec3& n) {
  return std::atan2(dot(cross(a, b), n), dot(a, b));
}

void require_zero_gamma(const LKSState& st) {
  if (std::abs(st.Gamma) > 1e-9 * std::max(1.0, std::abs(st.L)))
    fail(ErrorKind::NonzeroGamma, "Kepler vectors are defined for Gamma = 0 only");
}

}  // namespace

CartesianState elements_to_cartesian(const KeplerElements& el, double mu) {
  if (!(el.a > 0.0)) fail(ErrorKind::InvalidArgument, "semi-major axis must be positive");
  if (!(el.e >= 0.0)) fail(ErrorKind::InvalidArgument, "eccentricity must be nonnegative");
  if (!(el.e < 1.0)) fail(ErrorKind::DegenerateElements, "radial orbit (e = 1) has no true-anomaly parametrization");
  if (!(mu > 0.0)) fail(ErrorKind::InvalidArgument, "mu must be positive");

  const double p = el.a * (1.0 - el.e * el.e);
  const double cf = std::cos(el.true_anomaly), sf = std::sin(el.true_anomaly);
  const double r = p / (1.0 + el.e * cf);
  const double vp = std::sqrt(mu / p);
  const Vec3 xp{r * cf, r * sf, 0.0};
  const Vec3 Xp{-vp * sf, vp * (el.e + cf), 0.0};

  // R3(node) R1(I) R3(arg_pericentre)
  const double cO = std::cos(el.node), sO = std::sin(el.node);
  const double cI = std::cos(el.I), sI = std::sin(el.I);
  const double cw = std::cos(el.arg_pericentre), sw = std::sin(el.arg_pericentre);
  const Vec3 P{cO * cw - sO * cI * sw, sO * cw + cO * cI * sw, sI * sw};
  const Vec3 Q{-cO * sw - sO * cI * cw, -sO * sw + cO * cI * cw, sI * cw};
  return {xp.x * P + xp.y * Q, Xp.x * P + Xp.y * Q};
}

std::string to_string(ElementDegeneracy d) {
  switch (d) {
    case ElementDegeneracy::None: return "none";
    case ElementDegeneracy::Circular: return "circular";
    case ElementDegeneracy::Equatorial: return "equatorial";
    case ElementDegeneracy::CircularEquatorial: return "circular_equatorial";
    case ElementDegeneracy::Radial: return "radial";
  }
  return "unknown";
}

KeplerElements ElementExtraction::elements() const {
  if (degeneracy != ElementDegeneracy::None)
    fail(ErrorKind::DegenerateElements, "elements undefined for a " + to_string(degeneracy) + " orbit");
  return {a, e, *I, *arg_pericentre, *node, *true_anomaly};
}

ElementExtraction cartesian_to_elements(const Vec3& x, const Vec3& X, double mu, double tol) {
  const double r = norm(x);
  if (!(r > 0.0)) fail(ErrorKind::ZeroRadius, "elements of a state at the origin");
  const double energy = dot(X, X) / 2.0 - mu / r;
  if (!(energy < 0.0)) fail(ErrorKind::InvalidArgument, "state is not elliptic");

  ElementExtraction out;
  out.a = -mu / (2.0 * energy);
  const Vec3 h = cross(x, X);
  const double hn = norm(h);
  const double h_scale = std::sqrt(mu * out.a);

  if (hn <= tol * h_scale) {
    out.degeneracy = ElementDegeneracy::Radial;
    out.e = 1.0;
    out.apsidal_direction = x / r;
    return out;
  }

  const Vec3 hhat = h / hn;
  const Vec3 ev = cross(X, h) / mu - x / r;
  out.e = norm(ev);
  out.I = std::atan2(std::hypot(h.x, h.y), h.z);
  const Vec3 n{-h.y, h.x, 0.0};
  const bool equatorial = norm(n) <= tol * hn;
  const bool circular = out.e <= tol;
  const Vec3 e1{1.0, 0.0, 0.0};

  if (circular && equatorial) {
    out.degeneracy = ElementDegeneracy::CircularEquatorial;
    out.true_longitude = wrap_positive(oriented_angle(e1, x, hhat));
  } else if (circular) {
    out.degeneracy = ElementDegeneracy::Circular;
    out.node = wrap_positive(std::atan2(n.y, n.x));
    out.arg_latitude = wrap_positive(oriented_angle(n, x, hhat));
  } else if (equatorial) {
    out.degeneracy = ElementDegeneracy::Equatorial;
    out.longitude_of_pericentre = wrap_positive(oriented_angle(e1, ev, hhat));
    out.true_anomaly = wrap_positive(oriented_angle(ev, x, hhat));
  } else {
    out.node = wrap_positive(std::atan2(n.y, n.x));
    out.arg_pericentre = wrap_positive(oriented_angle(n, ev, hhat));
    out.true_anomaly = wrap_positive(oriented_angle(ev, x, hhat));
  }
  return out;
}

Vec3 angular_momentum_lks(const LKSState& st) {
  require_zero_gamma(st);
  const ActionCoefficients c = coefficients(st.L, st.Lambda, st.G, 0.0);
  const double p = 2.0 * (st.g + st.lambda), m = 2.0 * (st.g - st.lambda);
  return {0.5 * (c.C1 * std::sin(p) - c.C2 * std::sin(m)), 0.5 * (-c.C1 * std::cos(p) + c.C2 * std::cos(m)),
          0.5 * st.G};
}

Vec3 lrl_vector_lks(const LKSState& st) {
  require_zero_gamma(st);
  const ActionCoefficients c = coefficients(st.L, st.Lambda, st.G, 0.0);
  const double p = 2.0 * (st.g + st.lambda), m = 2.0 * (st.g - st.lambda);
  return {0.5 * (c.C1 * std::sin(p) + c.C2 * std::sin(m)), -0.5 * (c.C1 * std::cos(p) + c.C2 * std::cos(m)),
          0.5 * st.Lambda};
}

CartanPair cartan_vectors(const LKSState& st) {
  const Vec3 G = angular_momentum_lks(st);
  const Vec3 J = lrl_vector_lks(st);
  CartanPair cp;
  cp.M = 0.5 * (J + G);
  cp.N = 0.5 * (J - G);
  cp.Mp = {cp.M.x, cp.M.y, 0.0};
  cp.Np = {cp.N.x, cp.N.y, 0.0};
  return cp;
}

double lambda_from_projections(const CartanPair& cp, double tol) {
  const double scale = std::max({norm(cp.M), norm(cp.N), 1e-300});
  const double mp = norm(cp.Mp), np = norm(cp.Np);
  if (mp <= tol * scale || np <= tol * scale)
    fail(ErrorKind::UndefinedLambda, "a projected Cartan vector vanishes: lambda is undefined");
  const double theta = std::atan2(cross(cp.Np, cp.Mp).z, dot(cp.Mp, cp.Np));
  return theta / 4.0;
}

std::string to_string(OrbitClassKind k) {
  switch (k) {
    case OrbitClassKind::GenericCircular: return "GenericCircular";
    case OrbitClassKind::CircularPolar: return "CircularPolar";
    case OrbitClassKind::CircularEquatorial: return "CircularEquatorial";
    case OrbitClassKind::GenericRadial: return "GenericRadial";
    case OrbitClassKind::RadialEquatorial: return "RadialEquatorial";
    case OrbitClassKind::RadialPolar: return "RadialPolar";
    case OrbitClassKind::GenericEquatorial: return "GenericEquatorial";
    case OrbitClassKind::GenericPolar: return "GenericPolar";
    case OrbitClassKind::Generic: return "Generic";
  }
  return "Unknown";
}

OrbitClass classify(const LKSState& st, double tol) {
  if (!(st.L > 0.0)) fail(ErrorKind::InvalidArgument, "classification needs L > 0");
  const double gn = st.G / st.L;
  const double kn = st.Lambda / st.L;
  const bool zeroG = std::abs(gn) <= tol;
  const bool zeroK = std::abs(kn) <= tol;
  const bool fullG = std::abs(1.0 - std::abs(gn)) <= tol;
  const bool fullK = std::abs(1.0 - std::abs(kn)) <= tol;
  // 4 J^2 = (L^2 - G^2) cos^2 2 lambda on circular orbits; sin 4 lambda = 0 on radial/equatorial ones
  const bool oddQuarter = std::abs(std::cos(2.0 * st.lambda)) <= tol;
  const bool halfMultiple = std::abs(std::sin(2.0 * st.lambda)) <= tol;
  const std::vector<std::string> lgl{"l", "g", "lambda"};

  OrbitClass out;
  if (zeroK && fullG) {
    out.kind = OrbitClassKind::CircularEquatorial;
    out.undetermined = lgl;
  } else if (zeroG && fullK) {
    out.kind = OrbitClassKind::RadialPolar;
    out.undetermined = lgl;
  } else if (zeroK && zeroG) {
    out.kind = oddQuarter ? OrbitClassKind::CircularPolar
               : halfMultiple ? OrbitClassKind::RadialEquatorial
                              : OrbitClassKind::GenericPolar;
  } else if (zeroK) {
    out.kind = oddQuarter ? OrbitClassKind::GenericCircular
               : halfMultiple ? OrbitClassKind::GenericEquatorial
                              : OrbitClassKind::Generic;
  } else if (zeroG) {
    out.kind = halfMultiple ? OrbitClassKind::GenericRadial : OrbitClassKind::GenericPolar;
  } else {
    out.kind = OrbitClassKind::Generic;
  }

  const bool onEdge = std::abs(st.L - std::abs(st.G) - std::abs(st.Lambda)) <= tol * st.L;
  if (onEdge) {
    if (fullG && zeroK) {
      out.edge = gn > 0.0 ? EdgeInfo{"ac", "l+g"} : EdgeInfo{"bd", "l-g"};
    } else if (fullK && zeroG) {
      out.edge = kn > 0.0 ? EdgeInfo{"ab", "l+lambda"} : EdgeInfo{"cd", "l-lambda"};
    } else if (kn >= 0.0) {
      out.edge = gn >= 0.0 ? EdgeInfo{"a", "l03+g03"} : EdgeInfo{"b", "l03-g03"};
    } else {
      out.edge = gn >= 0.0 ? EdgeInfo{"c", "l12+g12"} : EdgeInfo{"d", "l12-g12"};
    }
    out.undetermined = lgl;
  }
  return out;
}

double DelaunayReport::max_abs() const {
  return std::max({std::abs(L_residual), std::abs(G_residual), std::abs(Lambda_residual)});
}

DelaunayReport delaunay_checks(const LKSState& st, double mu) {
  const CartesianPhaseExt p = lks_to_cartesian(st);
  const double r = norm(p.x);
  const double energy = dot(p.X, p.X) / 2.0 - mu / r;
  if (!(energy < 0.0)) fail(ErrorKind::InvalidArgument, "state is not elliptic");
  const double a = -mu / (2.0 * energy);
  const double Lo = std::sqrt(mu * a);
  const Vec3 h = cross(p.x, p.X);
  const Vec3 J = Lo * (cross(p.X, h) / mu - p.x / r);
  return {st.L - 2.0 * Lo, st.G - 2.0 * h.z, st.Lambda - 2.0 * J.z};
}

}  // namespace lks
