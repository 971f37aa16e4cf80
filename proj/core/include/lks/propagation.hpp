#pragma once

#include <optional>
#include <vector>

#include "lks/lidov_kozai.hpp"
#include "lks/lissajous_lks.hpp"
#include "lks/ode.hpp"
#include "lks/orbit_geometry.hpp"

namespace lks {

// Exact Kepler flow in LKS variables: l advances at omega, s at dM0/dS; everything else is constant.
LKSState kepler_flow_lks(const LKSState& state0, double dtau, const GaugeAlpha& gauge, double mu,
                         double m0_tol = 1e-9);

struct OracleOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  double r_min = 1e-6;
  std::optional<double> stride;
};

// Energy-like momentum X* making H = X.X/2 - mu/r + R + X* vanish.
double balancing_energy(const CartesianPhaseExt& p, double mu, const std::optional<LKParams>& perturbation);

// Direct integration in physical time of x' = X, X' = -mu x/r^3 - grad R, x*' = 1, X*' = -dR/dx*.
// Columns x_star, x1, x2, x3, X_star, X1, X2, X3. Throws CollisionApproach when r < r_min.
Trajectory cartesian_oracle(const CartesianPhaseExt& p0, double mu, const std::optional<LKParams>& perturbation,
                            double t_span, const OracleOptions& options = {});

// Final state of the same integration.
CartesianPhaseExt cartesian_oracle_state(const CartesianPhaseExt& p0, double mu,
                                         const std::optional<LKParams>& perturbation, double t_span,
                                         const OracleOptions& options = {});

CartesianPhaseExt to_phase(const TrajectorySample& sample);

// Closed-form 4-D oscillator flow; the time-like coordinate uses the analytic integral of |v|^2.
KSPhase ks_oscillator_flow(const KSPhase& k0, double dtau, const GaugeAlpha& gauge, double mu,
                           const KSFrame& frame = KSFrame::ks3(), double tol = 1e-9);

// Osculating (lambda, Lambda) drift of a directly integrated perturbed orbit against the secular flow.
struct SecularComparison {
  double t_span = 0.0;
  double tau_span = 0.0;
  double lambda0 = 0.0;
  double Lambda0 = 0.0;
  double lambda_oracle = 0.0;  // unwrapped continuously from lambda0
  double Lambda_oracle = 0.0;
  double lambda_secular = 0.0;
  double Lambda_secular = 0.0;
  double Lambda_drift = 0.0;        // secular Lambda change
  double Lambda_mismatch = 0.0;     // |oracle - secular|
  double lambda_mismatch = 0.0;
  double N_relative_drift = 0.0;    // secular flow conservation check
};

SecularComparison compare_secular_with_oracle(const KeplerElements& elements, double mu, double mu_p, double a_p,
                                              double t_span, std::size_t checkpoints = 64);

}  // namespace lks
