#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lks/lissajous_lks.hpp"
#include "lks/ode.hpp"

namespace lks {

// Quadrupole perturbation by a distant perturber on a circular orbit in the (x1, x2) plane.
// The model assumes r << a_p; this is not enforced.
struct LKParams {
  double mu = 1.0;
  double mu_p = 1.0;
  double a_p = 20.0;
  double n_p = 0.0;
  double S = 0.5;
  double L = 2.0;
  double G = 0.0;

  // S from the Kepler part (L - 2 mu / sqrt(2S) = 0), n_p from Kepler's third law.
  static LKParams from_actions(double L, double G, double mu = 1.0, double mu_p = 1.0, double a_p = 20.0);
  void validate() const;
};

struct SecularState {
  double lambda = 0.0;
  double Lambda = 0.0;
};

enum class EquilibriumFamily { EquatorialElliptic, CircularInclined, KozaiFixedPoint, RadialEquatorial, Vertex };
enum class Stability { Stable, Unstable, Degenerate };

std::string to_string(EquilibriumFamily f);
std::string to_string(Stability s);

struct Equilibrium {
  double lambda = 0.0;
  double Lambda = 0.0;
  EquilibriumFamily family = EquilibriumFamily::EquatorialElliptic;
  Stability stability = Stability::Degenerate;
  std::array<std::complex<double>, 2> eigenvalues{};
  bool lambda_defined = true;
  std::string extremum;  // vertices only: "max", "min", "saddle" or "undefined"
};

double perturbation_R(const Vec3& x, double x_star, const LKParams& p);
Vec3 perturbation_R_gradient(const Vec3& x, double x_star, const LKParams& p);
double perturbation_R_dxstar(const Vec3& x, double x_star, const LKParams& p);

// (4r/alpha) R in the sqrt(8S) gauge, written with the LKS closed forms and the phase 2 n_p s - sigma.
double perturbation_Q_lks(const LKSState& state, const LKParams& p);

// Average over l of the perturbation, trapezoid rule on n_nodes equispaced nodes.
double average_Q_numeric(double S, double L, double Lambda, double G, double lambda, const LKParams& p,
                         int n_nodes = 256);
// Closed-form average: -(mu_p L / (64 a_p^3 S^2)) (L^2 - 6 Lambda^2 + 6 C1 C2 cos 4 lambda).
double average_Q_closed(double S, double L, double Lambda, double G, double lambda, const LKParams& p);

double secular_B(const LKParams& p);
double secular_hamiltonian_N(const SecularState& s, const LKParams& p);

// (d lambda / d tau, d Lambda / d tau). Throws BoundarySingularity on the edge |Lambda| = L - |G|.
std::pair<double, double> secular_rhs(const SecularState& s, const LKParams& p);

using Jacobian2 = std::array<std::array<double, 2>, 2>;
Jacobian2 secular_jacobian(const SecularState& s, const LKParams& p);

// Nonzero fixed-point action, present for 0 < (G/L)^2 < 3/5 (and = L at G = 0).
std::optional<double> kozai_Lambda_c(double L, double G);

struct SecularOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-15;
  std::optional<double> stride;
};

// Columns lambda, Lambda, L, G, S; L, G and S are copied, not integrated.
Trajectory propagate_secular(const SecularState& s0, const LKParams& p, double tau_span,
                             const SecularOptions& options = {});

std::vector<Equilibrium> find_equilibria(const LKParams& p);

struct StabilityResult {
  std::array<std::complex<double>, 2> eigenvalues{};
  Stability stability = Stability::Degenerate;
  std::string extremum;
};

StabilityResult stability(const Equilibrium& eq, const LKParams& p);

struct PhasePortrait {
  std::vector<double> lambdas;
  std::vector<double> Lambdas;
  std::vector<double> N;  // row-major: N[i * lambdas.size() + j] at (lambdas[j], Lambdas[i])
  std::vector<Equilibrium> equilibria;
  std::vector<double> separatrix_levels;

  double at(std::size_t i_Lambda, std::size_t j_lambda) const { return N[i_Lambda * lambdas.size() + j_lambda]; }
  std::string to_csv() const;  // header lambda,Lambda,N
};

std::vector<double> uniform_grid(double lo, double hi, std::size_t n);

// lambda grid clipped to [-pi, pi], Lambda grid to the admissible interval. Rows are evaluated in parallel.
PhasePortrait phase_portrait(const LKParams& p, const std::vector<double>& lambda_grid,
                             const std::vector<double>& Lambda_grid, unsigned threads = 0);
PhasePortrait phase_portrait(const LKParams& p, std::size_t n_lambda, std::size_t n_Lambda, unsigned threads = 0);

}  // namespace lks
