#include "lks/propagation.hpp"

#include <cmath>
#include <numbers>

#include "lks/errors.hpp"

namespace lks {

namespace {

constexpr double kPi = std::numbers::pi;

OdeState pack(const CartesianPhaseExt& p) { return {p.x_star, p.x.x, p.x.y, p.x.z, p.X_star, p.X.x, p.X.y, p.X.z}; }

CartesianPhaseExt unpack(const OdeState& y) { return {y[0], {y[1], y[2], y[3]}, y[4], {y[5], y[6], y[7]}}; }

OdeRhs oracle_rhs(double mu, const std::optional<LKParams>& pert, double r_min) {
  return [mu, pert, r_min](const OdeState& y, OdeState& d, double) {
    const Vec3 x{y[1], y[2], y[3]};
    const double r = norm(x);
    if (r < r_min) fail(ErrorKind::CollisionApproach, "Cartesian oracle reached r < r_min");
    Vec3 acc = (-mu / (r * r * r)) * x;
    double dS = 0.0;
    if (pert) {
      acc -= perturbation_R_gradient(x, y[0], *pert);
      dS = -perturbation_R_dxstar(x, y[0], *pert);
    }
    d[0] = 1.0;
    d[1] = y[5];
    d[2] = y[6];
    d[3] = y[7];
    d[4] = dS;
    d[5] = acc.x;
    d[6] = acc.y;
    d[7] = acc.z;
  };
}

OdeOptions to_ode(const OracleOptions& o) {
  OdeOptions opt;
  opt.rel_tol = o.rel_tol;
  opt.abs_tol = o.abs_tol;
  opt.stride = o.stride;
  return opt;
}

}  // namespace

LKSState kepler_flow_lks(const LKSState& s0, double dtau, const GaugeAlpha& gauge, double mu, double m0_tol) {
  if (std::abs(s0.Gamma) > 1e-9 * std::max(1.0, s0.L)) fail(ErrorKind::NonzeroGamma, "Kepler flow needs Gamma = 0");
  const double m0 = hamiltonian_M0(s0, gauge, mu);
  if (std::abs(m0) > m0_tol * std::max(1.0, s0.L * gauge.omega(s0.S)))
    fail(ErrorKind::ManifoldViolation, "state is off the M0 = 0 energy surface");
  LKSState s = s0;
  const double a = gauge.alpha(s0.S);
  s.l += gauge.omega(s0.S) * dtau;
  s.s += (s0.L * gauge.domega_dS(s0.S) + 4.0 * mu * gauge.dalpha_dS(s0.S) / (a * a)) * dtau;
  return s;
}

double balancing_energy(const CartesianPhaseExt& p, double mu, const std::optional<LKParams>& pert) {
  double h = dot(p.X, p.X) / 2.0 - mu / norm(p.x);
  if (pert) h += perturbation_R(p.x, p.x_star, *pert);
  return -h;
}

Trajectory cartesian_oracle(const CartesianPhaseExt& p0, double mu, const std::optional<LKParams>& pert,
                            double t_span, const OracleOptions& options) {
  if (!(norm(p0.x) >= options.r_min)) fail(ErrorKind::CollisionApproach, "initial radius below r_min");
  Trajectory traj;
  traj.time_variable = TimeVariable::PhysicalTime;
  traj.chart = "cartesian";
  traj.columns = {"x_star", "x1", "x2", "x3", "X_star", "X1", "X2", "X3"};
  OdeState y = pack(p0);
  const double t0 = p0.x_star;
  integrate_adaptive(oracle_rhs(mu, pert, options.r_min), y, t0, t0 + t_span, to_ode(options),
                     [&](const OdeState& v, double t) { traj.push(t, v); });
  return traj;
}

CartesianPhaseExt cartesian_oracle_state(const CartesianPhaseExt& p0, double mu,
                                         const std::optional<LKParams>& pert, double t_span,
                                         const OracleOptions& options) {
  if (!(norm(p0.x) >= options.r_min)) fail(ErrorKind::CollisionApproach, "initial radius below r_min");
  OdeState y = pack(p0);
  OracleOptions o = options;
  o.stride.reset();
  integrate_adaptive(oracle_rhs(mu, pert, options.r_min), y, p0.x_star, p0.x_star + t_span, to_ode(o));
  return unpack(y);
}

CartesianPhaseExt to_phase(const TrajectorySample& sample) { return unpack(sample.y); }

KSPhase ks_oscillator_flow(const KSPhase& k0, double dtau, const GaugeAlpha& gauge, double mu, const KSFrame& frame,
                           double tol) {
  const double S = k0.V_star;
  const double w = gauge.omega(S);
  const double a = gauge.alpha(S);
  const double J = bilinear_J(k0.v, k0.V, frame);
  if (std::abs(J) > tol * std::max(1.0, norm(k0.v) * norm(k0.V)))
    fail(ErrorKind::ManifoldViolation, "oscillator flow needs J(v, V) = 0");
  const double K0 = hamiltonian_K0(k0, frame, gauge, mu);
  if (std::abs(K0) > tol * std::max(1.0, 4.0 * mu / a))
    fail(ErrorKind::ManifoldViolation, "oscillator flow needs K0 = 0");

  const double c = std::cos(w * dtau), s = std::sin(w * dtau);
  KSPhase k = k0;
  k.v = c * k0.v + (s / w) * k0.V;
  k.V = c * k0.V - (w * s) * k0.v;

  // dt/dtau = 4 |v|^2 / alpha^2, integrated exactly
  const double vv = norm2(k0.v), VV = norm2(k0.V), vV = dot(k0.v, k0.V);
  const double s2 = std::sin(2.0 * w * dtau);
  const double ic2 = dtau / 2.0 + s2 / (4.0 * w);
  const double is2 = dtau / 2.0 - s2 / (4.0 * w);
  const double isc = s * s / (2.0 * w);
  const double integral = vv * ic2 + VV / (w * w) * is2 + 2.0 * vV / w * isc;
  const double k2 = gauge.log_slope();
  const double x_star0 = k0.v_star - k2 * vV / (2.0 * S);
  const double x_star1 = x_star0 + 4.0 * integral / (a * a);
  k.v_star = x_star1 + k2 * dot(k.v, k.V) / (2.0 * S);
  return k;
}

SecularComparison compare_secular_with_oracle(const KeplerElements& el, double mu, double mu_p, double a_p,
                                              double t_span, std::size_t checkpoints) {
  if (checkpoints < 1) fail(ErrorKind::InvalidArgument, "need at least one checkpoint");
  const GaugeAlpha gauge = GaugeAlpha::sqrt8S();
  const CartesianState cs = elements_to_cartesian(el, mu);
  LKParams pert;
  pert.mu = mu;
  pert.mu_p = mu_p;
  pert.a_p = a_p;
  pert.n_p = std::sqrt((mu + mu_p) / (a_p * a_p * a_p));
  CartesianPhaseExt p{0.0, cs.x, 0.0, cs.X};
  p.X_star = balancing_energy(p, mu, pert);

  const LKSState st0 = cartesian_to_lks(p, gauge);
  LKParams sec = LKParams::from_actions(st0.L, st0.G, mu, mu_p, a_p);

  SecularComparison out;
  out.t_span = t_span;
  out.tau_span = t_span * std::sqrt(2.0 * sec.S * sec.S * sec.S) / mu;
  out.lambda0 = st0.lambda;
  out.Lambda0 = st0.Lambda;

  // Oracle: follow lambda continuously; the flow is pi/2-periodic in lambda and the
  // Lissajous angle normalization can shift lambda by multiples of pi/2.
  double lambda_prev = st0.lambda;
  CartesianPhaseExt cur = p;
  const double dt = t_span / double(checkpoints);
  LKSState st = st0;
  for (std::size_t i = 0; i < checkpoints; ++i) {
    cur = cartesian_oracle_state(cur, mu, pert, dt);
    st = cartesian_to_lks(cur, gauge);
    const double q = kPi / 2.0;
    lambda_prev += std::remainder(st.lambda - lambda_prev, q);
  }
  out.lambda_oracle = lambda_prev;
  out.Lambda_oracle = st.Lambda;

  const Trajectory tr = propagate_secular({st0.lambda, st0.Lambda}, sec, out.tau_span);
  out.lambda_secular = tr.back().y[0];
  out.Lambda_secular = tr.back().y[1];
  out.Lambda_drift = out.Lambda_secular - out.Lambda0;
  out.Lambda_mismatch = std::abs(out.Lambda_oracle - out.Lambda_secular);
  out.lambda_mismatch = std::abs(out.lambda_oracle - out.lambda_secular);
  const double n0 = secular_hamiltonian_N({st0.lambda, st0.Lambda}, sec);
  const double n1 = secular_hamiltonian_N({out.lambda_secular, out.Lambda_secular}, sec);
  out.N_relative_drift = std::abs(n1 - n0) / std::abs(n0);
  return out;
}

}  // namespace lks
