#pragma once

#include <string>
#include <utility>
#include <variant>

#include "lks/ks_transform.hpp"

namespace lks {

// Quaternion component planes: (v0, v3) and (v1, v2).
enum class PlaneTag { P03, P12 };

std::string to_string(PlaneTag tag);

struct LissajousPlane {
  double l = 0.0;
  double g = 0.0;
  double L = 0.0;
  double G = 0.0;
  PlaneTag tag = PlaneTag::P03;
};

struct PlaneCoords {
  double vi = 0.0;
  double vj = 0.0;
  double Vi = 0.0;
  double Vj = 0.0;
};

// Circular Lissajous ellipse: l and g are undefined, only l+g (G > 0) or l-g (G < 0) survives.
struct CircularLissajous {
  double L = 0.0;
  double G = 0.0;
  double longitude = 0.0;
  bool prograde = true;
  PlaneTag tag = PlaneTag::P03;

  std::string combination() const { return prograde ? "l+g" : "l-g"; }
};

using LissajousResult = std::variant<LissajousPlane, CircularLissajous>;

inline constexpr double kCircularPlaneTolerance = 1e-12;

PlaneCoords lissajous_forward(const LissajousPlane& p, double omega);
// Angles normalized to g in [0, pi), l in (-pi, pi].
LissajousResult lissajous_inverse(const PlaneCoords& c, double omega, PlaneTag tag = PlaneTag::P03);

// Semi-axes (a, b) of the Lissajous ellipse, a >= b >= 0.
std::pair<double, double> lissajous_semiaxes(const LissajousPlane& p, double omega);

PlaneCoords plane_coords(const KSPhase& k, PlaneTag tag);

struct LKSState {
  double s = 0.0;
  double l = 0.0;
  double lambda = 0.0;
  double g = 0.0;
  double gamma = 0.0;
  double S = 0.0;
  double L = 0.0;
  double Lambda = 0.0;
  double G = 0.0;
  double Gamma = 0.0;
};

struct ActionCoefficients {
  double A1 = 0.0;
  double A2 = 0.0;
  double B1 = 0.0;
  double B2 = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
};

LKSState mathieu_to_lks(const LissajousPlane& p03, const LissajousPlane& p12, double s, double S);
std::pair<LissajousPlane, LissajousPlane> lks_to_planes(const LKSState& state);

ActionCoefficients coefficients(double L, double Lambda, double G, double Gamma = 0.0);
ActionCoefficients coefficients(const LKSState& state);

// Radius from the closed form, gauge independent.
double lks_radius(const LKSState& state);
// v.V = B1 sin 2(l+lambda) + B2 sin 2(l-lambda) = 2 x.X.
double lks_vdotV(const LKSState& state);

CartesianPhaseExt lks_to_cartesian(const LKSState& state, double gamma_tol = 1e-9);
KSPhase lks_to_ks(const LKSState& state, const GaugeAlpha& gauge);
// KS3 chart only. Throws UndefinedAnglesError when a Lissajous plane is circular.
LKSState ks_to_lks(const KSPhase& k, const GaugeAlpha& gauge);
LKSState cartesian_to_lks(const CartesianPhaseExt& p, const GaugeAlpha& gauge);

double hamiltonian_M0(const LKSState& state, const GaugeAlpha& gauge, double mu);

// Wraps to (-pi, pi].
double wrap_angle(double a);

}  // namespace lks
