#include "lks/lidov_kozai.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <thread>

#include "lks/errors.hpp"

namespace lks {

namespace {

constexpr double kPi = std::numbers::pi;

struct Radical {
  double P;      // (L-G+Lambda)(L+G-Lambda)(L-G-Lambda)(L+G+Lambda) = 16 C1^2 C2^2
  double sqrtP;  // 4 C1 C2
  double u;      // L^2 + G^2 - Lambda^2
};

Radical radical(double L, double G, double Lambda) {
  double P = (L - G + Lambda) * (L + G - Lambda) * (L - G - Lambda) * (L + G + Lambda);
  if (P < 0.0) {
    if (P < -1e-12 * L * L * L * L) fail(ErrorKind::NegativeRadicand, "secular state outside the admissible square");
    P = 0.0;
  }
  return {P, std::sqrt(P), L * L + G * G - Lambda * Lambda};
}

double secular_bracket(double L, double G, double Lambda, double lambda) {
  const Radical r = radical(L, G, Lambda);
  // 6 C1 C2 = 1.5 sqrt(P)
  return L * L - 6.0 * Lambda * Lambda + 1.5 * r.sqrtP * std::cos(4.0 * lambda);
}

bool boundary(const Radical& r, double L) { return r.sqrtP <= 1e-15 * L * L; }

std::array<std::complex<double>, 2> eigen2(const Jacobian2& J) {
  const double tr = J[0][0] + J[1][1];
  const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
  const std::complex<double> disc = std::sqrt(std::complex<double>(tr * tr / 4.0 - det, 0.0));
  return {tr / 2.0 + disc, tr / 2.0 - disc};
}

Stability classify_eigen(const Jacobian2& J) {
  const double tr = J[0][0] + J[1][1];
  const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
  const double disc = tr * tr / 4.0 - det;
  double scale = 0.0;
  for (const auto& row : J)
    for (double v : row) scale = std::max(scale, std::abs(v));
  const double eps = 1e-10 * scale * scale;
  if (scale == 0.0 || std::abs(disc) <= eps) return Stability::Degenerate;
  if (disc < 0.0) return std::abs(tr) <= 1e-8 * scale ? Stability::Stable : Stability::Unstable;
  return Stability::Unstable;
}

Jacobian2 finite_difference_jacobian(const SecularState& s, const LKParams& p) {
  const double hl = 1e-6, hL = 1e-6 * p.L;
  Jacobian2 J{};
  const auto fl1 = secular_rhs({s.lambda + hl, s.Lambda}, p);
  const auto fl0 = secular_rhs({s.lambda - hl, s.Lambda}, p);
  const auto fL1 = secular_rhs({s.lambda, s.Lambda + hL}, p);
  const auto fL0 = secular_rhs({s.lambda, s.Lambda - hL}, p);
  J[0][0] = (fl1.first - fl0.first) / (2 * hl);
  J[1][0] = (fl1.second - fl0.second) / (2 * hl);
  J[0][1] = (fL1.first - fL0.first) / (2 * hL);
  J[1][1] = (fL1.second - fL0.second) / (2 * hL);
  return J;
}

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_string(EquilibriumFamily f) {
  switch (f) {
    case EquilibriumFamily::EquatorialElliptic: return "EquatorialElliptic";
    case EquilibriumFamily::CircularInclined: return "CircularInclined";
    case EquilibriumFamily::KozaiFixedPoint: return "KozaiFixedPoint";
    case EquilibriumFamily::RadialEquatorial: return "RadialEquatorial";
    case EquilibriumFamily::Vertex: return "Vertex";
  }
  return "Unknown";
}

std::string to_string(Stability s) {
  switch (s) {
    case Stability::Stable: return "Stable";
    case Stability::Unstable: return "Unstable";
    case Stability::Degenerate: return "Degenerate";
  }
  return "Unknown";
}

LKParams LKParams::from_actions(double L, double G, double mu, double mu_p, double a_p) {
  LKParams p;
  p.mu = mu;
  p.mu_p = mu_p;
  p.a_p = a_p;
  p.L = L;
  p.G = G;
  if (!(L > 0.0)) fail(ErrorKind::InvalidArgument, "L must be positive");
  p.S = 2.0 * mu * mu / (L * L);
  if (a_p > 0.0) p.n_p = std::sqrt((mu + mu_p) / (a_p * a_p * a_p));
  p.validate();
  return p;
}

void LKParams::validate() const {
  if (!(mu > 0.0) || !(mu_p > 0.0)) fail(ErrorKind::InvalidArgument, "mu and mu_p must be positive");
  if (!(a_p > 0.0)) fail(ErrorKind::InvalidArgument, "a_p must be positive");
  if (!(S > 0.0)) fail(ErrorKind::NonpositiveEnergy, "S must be positive");
  if (!(L > 0.0)) fail(ErrorKind::InvalidArgument, "L must be positive");
  if (!(std::abs(G) <= L)) fail(ErrorKind::NegativeRadicand, "|G| must not exceed L");
  if (!std::isfinite(n_p)) fail(ErrorKind::InvalidArgument, "n_p must be finite");
}

double perturbation_R(const Vec3& x, double x_star, const LKParams& p) {
  const double k = p.mu_p / (4.0 * p.a_p * p.a_p * p.a_p);
  const double th = 2.0 * p.n_p * x_star;
  const double r2 = dot(x, x);
  return -k * (r2 - 3.0 * x.z * x.z + 3.0 * (x.x * x.x - x.y * x.y) * std::cos(th) + 6.0 * x.x * x.y * std::sin(th));
}

Vec3 perturbation_R_gradient(const Vec3& x, double x_star, const LKParams& p) {
  const double k = p.mu_p / (4.0 * p.a_p * p.a_p * p.a_p);
  const double th = 2.0 * p.n_p * x_star;
  const double c = std::cos(th), s = std::sin(th);
  return {-k * (2.0 * x.x + 6.0 * x.x * c + 6.0 * x.y * s), -k * (2.0 * x.y - 6.0 * x.y * c + 6.0 * x.x * s),
          4.0 * k * x.z};
}

double perturbation_R_dxstar(const Vec3& x, double x_star, const LKParams& p) {
  const double k = p.mu_p / (4.0 * p.a_p * p.a_p * p.a_p);
  const double th = 2.0 * p.n_p * x_star;
  return -k * p.n_p * (-6.0 * (x.x * x.x - x.y * x.y) * std::sin(th) + 12.0 * x.x * x.y * std::cos(th));
}

double perturbation_Q_lks(const LKSState& st, const LKParams& p) {
  const ActionCoefficients c = coefficients(st.L, st.Lambda, st.G, 0.0);
  const CartesianPhaseExt q = lks_to_cartesian(st);
  const double r = lks_radius(st);
  const double sigma =
      p.n_p / (2.0 * st.S) * (c.B1 * std::sin(2.0 * (st.l + st.lambda)) + c.B2 * std::sin(2.0 * (st.l - st.lambda)));
  const double phase = 2.0 * p.n_p * st.s - sigma;
  const Vec3& x = q.x;
  const double bracket = r * r - 3.0 * x.z * x.z + 3.0 * (x.x * x.x - x.y * x.y) * std::cos(phase) +
                         6.0 * x.x * x.y * std::sin(phase);
  return -p.mu_p * r / (2.0 * p.a_p * p.a_p * p.a_p * std::sqrt(2.0 * st.S)) * bracket;
}

double average_Q_numeric(double S, double L, double Lambda, double G, double lambda, const LKParams& p,
                         int n_nodes) {
  if (n_nodes < 4) fail(ErrorKind::InvalidArgument, "quadrature needs at least 4 nodes");
  if (!(S > 0.0)) fail(ErrorKind::NonpositiveEnergy, "S must be positive");
  const ActionCoefficients c = coefficients(L, Lambda, G, 0.0);
  const double k = std::sqrt(8.0 * S);
  double sum = 0.0;
  for (int i = 0; i < n_nodes; ++i) {
    const double l = 2.0 * kPi * i / n_nodes;
    const double cp = std::cos(2.0 * (l + lambda)), cm = std::cos(2.0 * (l - lambda));
    const double r = (L - c.B1 * cp - c.B2 * cm) / k;
    const double x3 = (-Lambda + c.B1 * cp - c.B2 * cm) / k;
    sum += r * r * r - 3.0 * r * x3 * x3;
  }
  const double integral = 2.0 * kPi * sum / n_nodes;
  return -p.mu_p / (4.0 * kPi * p.a_p * p.a_p * p.a_p * std::sqrt(2.0 * S)) * integral;
}

double average_Q_closed(double S, double L, double Lambda, double G, double lambda, const LKParams& p) {
  return -p.mu_p * L / (64.0 * p.a_p * p.a_p * p.a_p * S * S) * secular_bracket(L, G, Lambda, lambda);
}

double secular_B(const LKParams& p) { return 3.0 * p.mu_p * p.L / (64.0 * p.a_p * p.a_p * p.a_p * p.S * p.S); }

double secular_hamiltonian_N(const SecularState& s, const LKParams& p) {
  return p.L - 2.0 * p.mu / std::sqrt(2.0 * p.S) + average_Q_closed(p.S, p.L, s.Lambda, p.G, s.lambda, p);
}

std::pair<double, double> secular_rhs(const SecularState& s, const LKParams& p) {
  const double B = secular_B(p);
  const Radical r = radical(p.L, p.G, s.Lambda);
  const double c4 = std::cos(4.0 * s.lambda), s4 = std::sin(4.0 * s.lambda);
  if (boundary(r, p.L)) {
    // Lambda (L^2 + G^2 - Lambda^2) / sqrt(P) is removable only through Lambda = 0.
    if (s.Lambda != 0.0) fail(ErrorKind::BoundarySingularity, "secular field singular on the edge |Lambda| = L - |G|");
    return {0.0, 0.0};
  }
  return {B * s.Lambda * (4.0 + r.u * c4 / r.sqrtP), -2.0 * B * r.sqrtP * s4};
}

Jacobian2 secular_jacobian(const SecularState& s, const LKParams& p) {
  const double B = secular_B(p);
  const Radical r = radical(p.L, p.G, s.Lambda);
  if (r.sqrtP <= 1e-8 * p.L * p.L) return finite_difference_jacobian(s, p);
  const double c4 = std::cos(4.0 * s.lambda), s4 = std::sin(4.0 * s.lambda);
  const double K = s.Lambda, u = r.u, q = r.sqrtP;
  Jacobian2 J{};
  J[0][0] = -4.0 * B * K * u * s4 / q;
  J[0][1] = B * (4.0 + u * c4 / q) + B * K * c4 * (-2.0 * K / q + 2.0 * K * u * u / (r.P * q));
  J[1][0] = -8.0 * B * q * c4;
  J[1][1] = 4.0 * B * K * u * s4 / q;
  return J;
}

std::optional<double> kozai_Lambda_c(double L, double G) {
  const double g = G / L;
  if (!(g * g < 0.6)) return std::nullopt;
  const double rad = 1.0 - 8.0 * std::abs(g) / std::sqrt(15.0) + g * g;
  return L * std::sqrt(std::max(rad, 0.0));
}

Trajectory propagate_secular(const SecularState& s0, const LKParams& p, double tau_span,
                             const SecularOptions& options) {
  p.validate();
  if (std::abs(s0.Lambda) > p.L - std::abs(p.G))
    fail(ErrorKind::NegativeRadicand, "initial secular state outside the admissible square");
  Trajectory traj;
  traj.time_variable = TimeVariable::SundmanTime;
  traj.chart = "secular";
  traj.columns = {"lambda", "Lambda", "L", "G", "S"};
  OdeOptions opt;
  opt.rel_tol = options.rel_tol;
  opt.abs_tol = options.abs_tol * p.L;
  opt.stride = options.stride;
  OdeState y{s0.lambda, s0.Lambda};
  const OdeRhs rhs = [&](const OdeState& v, OdeState& d, double) {
    const auto [a, b] = secular_rhs({v[0], v[1]}, p);
    d[0] = a;
    d[1] = b;
  };
  integrate_adaptive(rhs, y, 0.0, tau_span, opt,
                     [&](const OdeState& v, double t) { traj.push(t, {v[0], v[1], p.L, p.G, p.S}); });
  return traj;
}

StabilityResult stability(const Equilibrium& eq, const LKParams& p) {
  StabilityResult out;
  if (eq.family == EquilibriumFamily::Vertex) {
    out.stability = Stability::Degenerate;
    const double width = p.L - std::abs(p.G);
    if (width <= 1e-12 * p.L) {
      out.extremum = "undefined";  // the chart collapses to the line Lambda = 0
      return out;
    }
    const SecularState v{eq.lambda_defined ? eq.lambda : 0.0, eq.Lambda};
    const double n0 = secular_hamiltonian_N(v, p);
    const double step = 1e-3 * width;
    const double inward = eq.Lambda > 0.0 ? -1.0 : 1.0;
    int above = 0, below = 0;
    for (int i = 0; i < 64; ++i) {
      const double lam = -kPi + 2.0 * kPi * (i + 0.5) / 64.0;
      const double n = secular_hamiltonian_N({lam, eq.Lambda + inward * step}, p);
      (n > n0 ? above : below)++;
    }
    out.extremum = above == 0 ? "max" : below == 0 ? "min" : "saddle";
    return out;
  }
  const SecularState s{eq.lambda, eq.Lambda};
  const Jacobian2 J = secular_jacobian(s, p);
  out.eigenvalues = eigen2(J);
  out.stability = classify_eigen(J);
  return out;
}

std::vector<Equilibrium> find_equilibria(const LKParams& p) {
  p.validate();
  std::vector<Equilibrium> eqs;
  const double width = p.L - std::abs(p.G);
  const bool circular_equatorial = width <= 1e-12 * p.L;
  const bool polar = std::abs(p.G) <= 1e-12 * p.L;
  const double quarter = kPi / 4.0;

  auto add = [&](double lambda, double Lambda, EquilibriumFamily fam, bool defined = true) {
    Equilibrium e;
    e.lambda = lambda;
    e.Lambda = Lambda;
    e.family = fam;
    e.lambda_defined = defined;
    const StabilityResult st = stability(e, p);
    e.stability = st.stability;
    e.eigenvalues = st.eigenvalues;
    e.extremum = st.extremum;
    eqs.push_back(e);
  };

  if (circular_equatorial) {
    add(0.0, 0.0, EquilibriumFamily::Vertex, false);
    return eqs;
  }
  // lambda in (-pi, pi]: k pi/2 for k = -1..2, odd quarters for k = -2..1
  for (int k = -1; k <= 2; ++k)
    add(k * kPi / 2.0, 0.0, polar ? EquilibriumFamily::RadialEquatorial : EquilibriumFamily::EquatorialElliptic);
  for (int k = -2; k <= 1; ++k) add((2 * k + 1) * quarter, 0.0, EquilibriumFamily::CircularInclined);

  if (polar) {
    add(0.0, p.L, EquilibriumFamily::Vertex, false);
    add(0.0, -p.L, EquilibriumFamily::Vertex, false);
  } else if (const auto lc = kozai_Lambda_c(p.L, p.G); lc && *lc > 1e-12 * p.L) {
    for (int k = -2; k <= 1; ++k) {
      add((2 * k + 1) * quarter, *lc, EquilibriumFamily::KozaiFixedPoint);
      add((2 * k + 1) * quarter, -*lc, EquilibriumFamily::KozaiFixedPoint);
    }
  }
  return eqs;
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  if (n < 2) fail(ErrorKind::InvalidArgument, "grid needs at least 2 points");
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + (hi - lo) * double(i) / double(n - 1);
  g.back() = hi;
  return g;
}

std::string PhasePortrait::to_csv() const {
  std::string out = "lambda,Lambda,N\n";
  out.reserve(out.size() + N.size() * 64);
  for (std::size_t i = 0; i < Lambdas.size(); ++i)
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
      out += format17(lambdas[j]);
      out += ',';
      out += format17(Lambdas[i]);
      out += ',';
      out += format17(at(i, j));
      out += '\n';
    }
  return out;
}

PhasePortrait phase_portrait(const LKParams& p, const std::vector<double>& lambda_grid,
                             const std::vector<double>& Lambda_grid, unsigned threads) {
  p.validate();
  const double width = p.L - std::abs(p.G);
  PhasePortrait pp;
  pp.lambdas.reserve(lambda_grid.size());
  for (double l : lambda_grid) pp.lambdas.push_back(std::clamp(l, -kPi, kPi));
  pp.Lambdas.reserve(Lambda_grid.size());
  for (double K : Lambda_grid) pp.Lambdas.push_back(std::clamp(K, -width, width));
  pp.N.assign(pp.lambdas.size() * pp.Lambdas.size(), 0.0);

  const std::size_t rows = pp.Lambdas.size();
  unsigned nt = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  nt = static_cast<unsigned>(std::min<std::size_t>(nt, std::max<std::size_t>(rows, 1)));
  auto work = [&](unsigned t) {
    for (std::size_t i = t; i < rows; i += nt)
      for (std::size_t j = 0; j < pp.lambdas.size(); ++j)
        pp.N[i * pp.lambdas.size() + j] = secular_hamiltonian_N({pp.lambdas[j], pp.Lambdas[i]}, p);
  };
  if (nt <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(nt);
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(work, t);
  }

  pp.equilibria = find_equilibria(p);
  for (const auto& e : pp.equilibria) {
    if (e.stability != Stability::Unstable) continue;
    const double level = secular_hamiltonian_N({e.lambda, e.Lambda}, p);
    const bool seen = std::any_of(pp.separatrix_levels.begin(), pp.separatrix_levels.end(), [&](double v) {
      return std::abs(v - level) <= 1e-14 * std::max(1.0, std::abs(level));
    });
    if (!seen) pp.separatrix_levels.push_back(level);
  }
  return pp;
}

PhasePortrait phase_portrait(const LKParams& p, std::size_t n_lambda, std::size_t n_Lambda, unsigned threads) {
  const double width = p.L - std::abs(p.G);
  return phase_portrait(p, uniform_grid(-kPi, kPi, n_lambda), uniform_grid(-width, width, n_Lambda), threads);
}

}  // namespace lks
