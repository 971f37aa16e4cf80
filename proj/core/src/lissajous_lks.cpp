#include "lks/lissajous_lks.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "lks/errors.hpp"

namespace lks {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRadicandTolerance = 1e-12;

// sqrt(a^2 - b^2) in factored form, with small negative radicands clamped to 0.
double half_root(double a, double b, double scale2) {
  const double rad = (a - b) * (a + b);
  if (rad < 0.0) {
    if (rad < -kRadicandTolerance * scale2) fail(ErrorKind::NegativeRadicand, "actions outside the admissible domain");
    return 0.0;
  }
  return 0.5 * std::sqrt(rad);
}

double checked_sqrt(double x, double scale) {
  if (x < 0.0) {
    if (x < -kRadicandTolerance * scale) fail(ErrorKind::NegativeRadicand, "Lissajous actions need L >= |G|");
    return 0.0;
  }
  return std::sqrt(x);
}

}  // namespace

std::string to_string(PlaneTag tag) { return tag == PlaneTag::P03 ? "03" : "12"; }

double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

PlaneCoords lissajous_forward(const LissajousPlane& p, double omega) {
  if (!(omega > 0.0)) fail(ErrorKind::InvalidArgument, "Lissajous frequency must be positive");
  const double scale = std::max(std::abs(p.L), std::abs(p.G));
  const double rp = checked_sqrt((p.L + p.G) / (2.0 * omega), scale / omega);
  const double rm = checked_sqrt((p.L - p.G) / (2.0 * omega), scale / omega);
  const double A = p.l + p.g;
  const double B = p.l - p.g;
  const double cA = std::cos(A), sA = std::sin(A), cB = std::cos(B), sB = std::sin(B);
  return {rp * cA - rm * cB, rp * sA + rm * sB, omega * (-rp * sA + rm * sB), omega * (rp * cA + rm * cB)};
}

LissajousResult lissajous_inverse(const PlaneCoords& c, double omega, PlaneTag tag) {
  if (!(omega > 0.0)) fail(ErrorKind::InvalidArgument, "Lissajous frequency must be positive");
  using cplx = std::complex<double>;
  const cplx I(0.0, 1.0);
  const cplx z(c.vi, c.vj);
  const cplx p = cplx(c.Vi, c.Vj) / omega;
  const cplx P = (z - I * p) / 2.0;   // rho+ e^{i(l+g)}
  const cplx Mn = (-I * p - z) / 2.0;  // rho- e^{-i(l-g)}
  const double rp2 = std::norm(P);
  const double rm2 = std::norm(Mn);
  const double L = omega * (rp2 + rm2);
  const double G = omega * (rp2 - rm2);

  if (L - std::abs(G) <= kCircularPlaneTolerance * L || L == 0.0) {
    CircularLissajous circ;
    circ.L = L;
    circ.G = G;
    circ.tag = tag;
    circ.prograde = G >= 0.0;
    circ.longitude = circ.prograde ? std::arg(P) : -std::arg(Mn);
    return circ;
  }

  const double A = std::arg(P);
  const double B = -std::arg(Mn);
  double l = 0.5 * (A + B);
  double g = 0.5 * (A - B);
  const double k = std::floor(g / kPi);
  g -= k * kPi;
  l -= k * kPi;
  if (g >= kPi) {  // rounding at the upper end
    g -= kPi;
    l -= kPi;
  }
  return LissajousPlane{wrap_angle(l), g, L, G, tag};
}

std::pair<double, double> lissajous_semiaxes(const LissajousPlane& p, double omega) {
  const double scale = std::max(std::abs(p.L), std::abs(p.G));
  const double sp = checked_sqrt(p.L + p.G, scale);
  const double sm = checked_sqrt(p.L - p.G, scale);
  // a = rho+ + rho-, b = |rho+ - rho-|
  const double n = std::sqrt(2.0 * omega);
  return {(sp + sm) / n, std::abs(sp - sm) / n};
}

PlaneCoords plane_coords(const KSPhase& k, PlaneTag tag) {
  if (tag == PlaneTag::P03) return {k.v.s0, k.v.v.z, k.V.s0, k.V.v.z};
  return {k.v.v.x, k.v.v.y, k.V.v.x, k.V.v.y};
}

LKSState mathieu_to_lks(const LissajousPlane& p03, const LissajousPlane& p12, double s, double S) {
  LKSState st;
  st.s = s;
  st.S = S;
  st.l = 0.5 * (p12.l + p03.l);
  st.lambda = 0.5 * (p12.l - p03.l);
  st.g = 0.5 * (p12.g + p03.g);
  st.gamma = 0.5 * (p12.g - p03.g);
  st.L = p12.L + p03.L;
  st.Lambda = p12.L - p03.L;
  st.G = p12.G + p03.G;
  st.Gamma = p12.G - p03.G;
  return st;
}

std::pair<LissajousPlane, LissajousPlane> lks_to_planes(const LKSState& st) {
  LissajousPlane p03{st.l - st.lambda, st.g - st.gamma, 0.5 * (st.L - st.Lambda), 0.5 * (st.G - st.Gamma), PlaneTag::P03};
  LissajousPlane p12{st.l + st.lambda, st.g + st.gamma, 0.5 * (st.L + st.Lambda), 0.5 * (st.G + st.Gamma), PlaneTag::P12};
  return {p03, p12};
}

ActionCoefficients coefficients(double L, double Lambda, double G, double Gamma) {
  const double s2 = L * L;
  ActionCoefficients c;
  c.A1 = half_root(L + G, Lambda + Gamma, s2);
  c.A2 = half_root(L - G, Lambda - Gamma, s2);
  c.B1 = half_root(L + Lambda, G + Gamma, s2);
  c.B2 = half_root(L - Lambda, G - Gamma, s2);
  c.C1 = half_root(L + Gamma, G + Lambda, s2);
  c.C2 = half_root(L - Gamma, G - Lambda, s2);
  return c;
}

ActionCoefficients coefficients(const LKSState& st) { return coefficients(st.L, st.Lambda, st.G, st.Gamma); }

double lks_radius(const LKSState& st) {
  const auto [p03, p12] = lks_to_planes(st);
  double acc = 0.0;
  for (const auto& p : {p03, p12}) acc += p.L - 2.0 * half_root(p.L, p.G, st.L * st.L) * std::cos(2.0 * p.l);
  return acc / std::sqrt(8.0 * st.S);
}

double lks_vdotV(const LKSState& st) {
  const auto [p03, p12] = lks_to_planes(st);
  double acc = 0.0;
  for (const auto& p : {p03, p12}) acc += 2.0 * half_root(p.L, p.G, st.L * st.L) * std::sin(2.0 * p.l);
  return acc;
}

CartesianPhaseExt lks_to_cartesian(const LKSState& st, double gamma_tol) {
  if (std::abs(st.Gamma) > gamma_tol * std::max(1.0, std::abs(st.L)))
    fail(ErrorKind::NonzeroGamma, "physical Cartesian state requires Gamma = 0");
  if (!(st.S > 0.0)) fail(ErrorKind::NonpositiveEnergy, "energy action S must be positive");
  const ActionCoefficients c = coefficients(st.L, st.Lambda, st.G, 0.0);
  const double k = std::sqrt(8.0 * st.S);
  const double lpg = 2.0 * (st.l + st.g), lmg = 2.0 * (st.l - st.g);
  const double gpl = 2.0 * (st.g + st.lambda), gml = 2.0 * (st.g - st.lambda);
  const double lpl = 2.0 * (st.l + st.lambda), lml = 2.0 * (st.l - st.lambda);

  const double r = (st.L - c.B1 * std::cos(lpl) - c.B2 * std::cos(lml)) / k;
  if (!(r > 1e-14 * std::max(1.0, st.L / k))) fail(ErrorKind::ZeroRadius, "collision point: r = 0");

  CartesianPhaseExt p;
  p.x.x = (c.A1 * std::sin(lpg) - c.A2 * std::sin(lmg) - c.C1 * std::sin(gpl) - c.C2 * std::sin(gml)) / k;
  p.x.y = (-c.A1 * std::cos(lpg) - c.A2 * std::cos(lmg) + c.C1 * std::cos(gpl) + c.C2 * std::cos(gml)) / k;
  p.x.z = (-st.Lambda + c.B1 * std::cos(lpl) - c.B2 * std::cos(lml)) / k;
  p.X.x = (c.A1 * std::cos(lpg) - c.A2 * std::cos(lmg)) / (2.0 * r);
  p.X.y = (c.A1 * std::sin(lpg) + c.A2 * std::sin(lmg)) / (2.0 * r);
  p.X.z = (-c.B1 * std::sin(lpl) + c.B2 * std::sin(lml)) / (2.0 * r);
  p.X_star = st.S;
  p.x_star = st.s - (c.B1 * std::sin(lpl) + c.B2 * std::sin(lml)) / (4.0 * st.S);
  return p;
}

KSPhase lks_to_ks(const LKSState& st, const GaugeAlpha& gauge) {
  const double w = gauge.omega(st.S);
  const auto [p03, p12] = lks_to_planes(st);
  const PlaneCoords a = lissajous_forward(p03, w);
  const PlaneCoords b = lissajous_forward(p12, w);
  KSPhase k;
  k.v = Quaternion(a.vi, b.vi, b.vj, a.vj);
  k.V = Quaternion(a.Vi, b.Vi, b.Vj, a.Vj);
  k.V_star = st.S;
  k.v_star = st.s - dot(k.v, k.V) / (2.0 * w) * gauge.domega_dS(st.S);
  return k;
}

LKSState ks_to_lks(const KSPhase& k, const GaugeAlpha& gauge) {
  const double S = k.V_star;
  const double w = gauge.omega(S);
  const LissajousResult r03 = lissajous_inverse(plane_coords(k, PlaneTag::P03), w, PlaneTag::P03);
  const LissajousResult r12 = lissajous_inverse(plane_coords(k, PlaneTag::P12), w, PlaneTag::P12);
  const double s = k.v_star + dot(k.v, k.V) / (2.0 * w) * gauge.domega_dS(S);

  const auto* c03 = std::get_if<CircularLissajous>(&r03);
  const auto* c12 = std::get_if<CircularLissajous>(&r12);
  if (c03 || c12) {
    std::vector<SurvivingAngle> surviving;
    if (c03) surviving.push_back({std::string("l03") + (c03->prograde ? "+" : "-") + "g03", c03->longitude});
    if (c12) surviving.push_back({std::string("l12") + (c12->prograde ? "+" : "-") + "g12", c12->longitude});
    if (c03 && c12 && c03->prograde == c12->prograde)
      surviving.push_back({c03->prograde ? "l+g" : "l-g", wrap_angle(0.5 * (c03->longitude + c12->longitude))});
    throw UndefinedAnglesError("circular Lissajous ellipse: individual angles undefined", {"l", "g", "lambda"},
                               std::move(surviving));
  }
  return mathieu_to_lks(std::get<LissajousPlane>(r03), std::get<LissajousPlane>(r12), s, S);
}

LKSState cartesian_to_lks(const CartesianPhaseExt& p, const GaugeAlpha& gauge) {
  return ks_to_lks(lift_cartesian(p, KSFrame::ks3(), gauge), gauge);
}

double hamiltonian_M0(const LKSState& st, const GaugeAlpha& gauge, double mu) {
  double m = gauge.omega(st.S) * st.L - 4.0 * mu / gauge.alpha(st.S);
  if (st.Gamma != 0.0) m += st.Gamma * st.Gamma / (8.0 * lks_radius(st));
  return m;
}

}  // namespace lks
