#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"

using namespace lks;
using oracle::kPi;

namespace {

LKParams params(double G_over_L, double L = 2.0) {
  return LKParams::from_actions(L, G_over_L * L, 1.0, 0.8, 20.0);
}

// Scale of the perturbing term of N.
double n_scale(const LKParams& p) { return p.mu_p * p.L * p.L * p.L / (64 * std::pow(p.a_p, 3) * p.S * p.S); }

std::pair<double, double> fd_gradient(const SecularState& s, const LKParams& p, double h = 1e-6) {
  const double dl = (secular_hamiltonian_N({s.lambda + h, s.Lambda}, p) -
                     secular_hamiltonian_N({s.lambda - h, s.Lambda}, p)) / (2 * h);
  const double hK = h * p.L;
  const double dK = (secular_hamiltonian_N({s.lambda, s.Lambda + hK}, p) -
                     secular_hamiltonian_N({s.lambda, s.Lambda - hK}, p)) / (2 * hK);
  return {dK, -dl};
}

// Eigenvalues of the finite-difference Jacobian of the vector field.
std::array<std::complex<double>, 2> fd_eigenvalues(const SecularState& s, const LKParams& p) {
  const double h = 1e-6, hK = 1e-6 * p.L;
  const auto [a1, b1] = secular_rhs({s.lambda + h, s.Lambda}, p);
  const auto [a0, b0] = secular_rhs({s.lambda - h, s.Lambda}, p);
  const auto [c1, d1] = secular_rhs({s.lambda, s.Lambda + hK}, p);
  const auto [c0, d0] = secular_rhs({s.lambda, s.Lambda - hK}, p);
  const double j00 = (a1 - a0) / (2 * h), j10 = (b1 - b0) / (2 * h);
  const double j01 = (c1 - c0) / (2 * hK), j11 = (d1 - d0) / (2 * hK);
  const double tr = j00 + j11, det = j00 * j11 - j01 * j10;
  const std::complex<double> disc = std::sqrt(std::complex<double>(tr * tr / 4 - det));
  return {tr / 2 + disc, tr / 2 - disc};
}

}  // namespace

TEST(Perturbation, Examples) {
  LKParams p = params(0.5);
  const double k = p.mu_p / std::pow(p.a_p, 3);
  const double r = 1.7;
  EXPECT_NEAR(perturbation_R({r, 0, 0}, 0.0, p), -k * r * r, 1e-16);
  // on the third axis the perturber is always at 90 deg: P2(0) = -1/2
  EXPECT_NEAR(perturbation_R({0, 0, r}, 0.0, p), k * r * r / 2, 1e-16);
  EXPECT_NEAR(perturbation_R({0, 0, r}, 12.3, p), k * r * r / 2, 1e-16);
}

TEST(PerturbationProperty, LegendreOracleAndGradients) {
  oracle::Rng rng(40);
  const LKParams p = params(0.3);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 x = rng.vec(3.0);
    const double t = rng.uniform(-500, 500);
    const double R = perturbation_R(x, t, p);
    const double scale = p.mu_p * dot(x, x) / std::pow(p.a_p, 3);
    EXPECT_NEAR(R, oracle::legendre_R(x, t, p.mu_p, p.a_p, p.n_p), 1e-12 * scale);
    const double h = 1e-6;
    const Vec3 g = perturbation_R_gradient(x, t, p);
    for (int c = 0; c < 3; ++c) {
      const Vec3 step = h * Vec3{double(c == 0), double(c == 1), double(c == 2)};
      const Vec3 up = x + step, dn = x - step;
      EXPECT_NEAR(g[c], (perturbation_R(up, t, p) - perturbation_R(dn, t, p)) / (2 * h), 1e-7 * scale);
    }
    const double ht = 1e-3;
    EXPECT_NEAR(perturbation_R_dxstar(x, t, p), (perturbation_R(x, t + ht, p) - perturbation_R(x, t - ht, p)) / (2 * ht),
                1e-7 * scale);
  }
}

TEST(PerturbationProperty, LKSFormMatchesPullback) {
  oracle::Rng rng(41);
  for (int i = 0; i < 1000; ++i) {
    LKSState s = rng.lks_state();
    s.S = 2.0 / (s.L * s.L);
    const LKParams p = LKParams::from_actions(s.L, s.G, 1.0, 0.8, 20.0);
    const CartesianPhaseExt c = lks_to_cartesian(s);
    const double r = norm(c.x);
    const double expected = 4 * r / std::sqrt(8 * s.S) * perturbation_R(c.x, c.x_star, p);
    EXPECT_NEAR(perturbation_Q_lks(s, p), expected, 1e-11 * (std::abs(expected) + n_scale(p)));
  }
}

TEST(Perturbation, CircularEquatorialPhaseIsPlain) {
  // B1 = B2 = 0 so x* = s
  const LKSState s{3.0, 0.4, 0.2, 0.5, 0.0, 0.5, 2.0, 0.0, 2.0, 0.0};
  const LKParams p = LKParams::from_actions(2.0, 2.0);
  const CartesianPhaseExt c = lks_to_cartesian(s);
  EXPECT_NEAR(c.x_star, s.s, 1e-15);
  EXPECT_NEAR(perturbation_Q_lks(s, p), 4 * norm(c.x) / 2.0 * perturbation_R(c.x, s.s, p), 1e-15);
}

TEST(AveragingProperty, QuadratureMatchesClosedForm) {
  oracle::Rng rng(42);
  for (int i = 0; i < 1000; ++i) {
    LKSState s = rng.lks_state();
    const LKParams p = LKParams::from_actions(s.L, s.G, 1.0, rng.uniform(0.1, 2), rng.uniform(5, 50));
    const double num = average_Q_numeric(s.S, s.L, s.Lambda, s.G, s.lambda, p);
    const double cls = average_Q_closed(s.S, s.L, s.Lambda, s.G, s.lambda, p);
    const double scale = p.mu_p * std::pow(s.L, 3) / (64 * std::pow(p.a_p, 3) * s.S * s.S);
    EXPECT_NEAR(num, cls, 1e-10 * scale);
    // closed form written out from the action coefficients
    const ActionCoefficients k = coefficients(s.L, s.Lambda, s.G);
    const double ref = -p.mu_p * s.L / (64 * std::pow(p.a_p, 3) * s.S * s.S) *
                       (s.L * s.L - 6 * s.Lambda * s.Lambda + 6 * k.C1 * k.C2 * std::cos(4 * s.lambda));
    EXPECT_NEAR(cls, ref, 1e-13 * scale);
  }
}

TEST(Averaging, CircularEquatorialCollapse) {
  const LKParams p = params(1.0);
  const double v = average_Q_closed(p.S, p.L, 0.0, p.L, 0.7, p);
  EXPECT_NEAR(v, -p.mu_p * std::pow(p.L, 3) / (64 * std::pow(p.a_p, 3) * p.S * p.S), 1e-16);
  EXPECT_NEAR(average_Q_numeric(p.S, p.L, 0.0, p.L, 0.7, p), v, 1e-10 * std::abs(v));
}

TEST(Secular, HamiltonianExamples) {
  const LKParams p = params(0.0);
  const double kepler = p.L - 2 * p.mu / std::sqrt(2 * p.S);
  EXPECT_NEAR(kepler, 0.0, 1e-14);
  const double pre = p.mu_p * p.L / (64 * std::pow(p.a_p, 3) * p.S * p.S);
  EXPECT_NEAR(secular_hamiltonian_N({0.0, 0.0}, p), kepler - pre * (p.L * p.L + 6 * p.L * p.L / 4), 1e-15);
  // on the boundary the cos 4 lambda term drops
  const LKParams q = params(0.4);
  const double w = q.L - std::abs(q.G);
  EXPECT_NEAR(secular_hamiltonian_N({0.3, w}, q), secular_hamiltonian_N({1.1, w}, q), 1e-15);
  EXPECT_THROW(secular_hamiltonian_N({0.3, 1.01 * w}, q), Error);
  EXPECT_NEAR(secular_B(p), 3 * pre, 1e-18);
}

TEST(Secular, VectorFieldExamples) {
  const LKParams p = params(0.0);
  const double B = secular_B(p);
  for (double K : {-1.5, -0.3, 0.7, 1.9}) {
    for (int k = -2; k <= 2; ++k) {
      const auto [dl, dK] = secular_rhs({k * kPi / 2, K}, p);
      EXPECT_NEAR(dl, 5 * B * K, 1e-12 * B * p.L);
      EXPECT_NEAR(dK, 0.0, 1e-12 * B * p.L * p.L);
    }
  }
  const LKParams q = params(0.5);
  const auto [dl, dK] = secular_rhs({kPi / 4, 0.0}, q);
  EXPECT_EQ(dl, 0.0);
  EXPECT_NEAR(dK, 0.0, 1e-15 * secular_B(q) * q.L * q.L);
  const double w = q.L - std::abs(q.G);
  try {
    secular_rhs({0.3, w}, q);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BoundarySingularity);
  }
  // the vertex of the circular equatorial chart is a removable 0/0
  const LKParams ce = params(1.0);
  const auto [a, b] = secular_rhs({0.3, 0.0}, ce);
  EXPECT_EQ(a, 0.0);
  EXPECT_EQ(b, 0.0);
}

TEST(SecularProperty, VectorFieldIsHamiltonianGradient) {
  oracle::Rng rng(43);
  for (int i = 0; i < 1000; ++i) {
    const LKParams p = params(rng.uniform(-0.98, 0.98), rng.uniform(0.5, 3));
    const double w = p.L - std::abs(p.G);
    const SecularState s{rng.uniform(-kPi, kPi), rng.uniform(-0.97, 0.97) * w};
    const ActionCoefficients k = coefficients(p.L, s.Lambda, p.G);
    if (k.C1 * k.C2 <= 1e-6 * p.L * p.L) continue;
    const auto [dl, dK] = secular_rhs(s, p);
    const auto [fl, fK] = fd_gradient(s, p);
    const double scale = secular_B(p) * p.L * p.L * (1 + p.L * p.L / (k.C1 * k.C2));
    EXPECT_NEAR(dl * p.L, fl * p.L, 1e-6 * scale);
    EXPECT_NEAR(dK, fK, 1e-6 * scale);
  }
}

TEST(SecularProperty, JacobianMatchesFiniteDifferences) {
  oracle::Rng rng(44);
  for (int i = 0; i < 300; ++i) {
    const LKParams p = params(rng.uniform(-0.95, 0.95));
    const double w = p.L - std::abs(p.G);
    const SecularState s{rng.uniform(-kPi, kPi), rng.uniform(-0.9, 0.9) * w};
    const Jacobian2 J = secular_jacobian(s, p);
    const double h = 1e-6, hK = 1e-6 * p.L;
    const auto [a1, b1] = secular_rhs({s.lambda + h, s.Lambda}, p);
    const auto [a0, b0] = secular_rhs({s.lambda - h, s.Lambda}, p);
    const auto [c1, d1] = secular_rhs({s.lambda, s.Lambda + hK}, p);
    const auto [c0, d0] = secular_rhs({s.lambda, s.Lambda - hK}, p);
    const double scale = secular_B(p) * p.L * p.L * 100;
    EXPECT_NEAR(J[0][0], (a1 - a0) / (2 * h), 1e-6 * scale);
    EXPECT_NEAR(J[1][0], (b1 - b0) / (2 * h), 1e-6 * scale);
    EXPECT_NEAR(J[0][1] * p.L, (c1 - c0) / (2 * hK) * p.L, 1e-6 * scale);
    EXPECT_NEAR(J[1][1] * p.L, (d1 - d0) / (2 * hK) * p.L, 1e-6 * scale);
  }
}

TEST(Secular, RegularAtRadialOrbits) {
  const LKParams p = params(0.0);
  for (double K : {-1.99, -1.0, 0.5, 1.99}) {
    const auto [dl, dK] = secular_rhs({kPi / 2, K}, p);
    EXPECT_TRUE(std::isfinite(dl) && std::isfinite(dK));
  }
}

TEST(Secular, PropagationConservesHamiltonian) {
  const LKParams p = params(0.0);
  const double B = secular_B(p);
  // small oval around the origin: libration frequency from the linearization
  const double period = 2 * kPi / (B * std::sqrt(5.0 * 8.0) * p.L);
  SecularOptions opt;
  opt.stride = period / 50;
  const SecularState s0{0.1, 0.0};
  const Trajectory tr = propagate_secular(s0, p, 10 * period, opt);
  const double N0 = secular_hamiltonian_N(s0, p);
  double lmax = 0, Kmax = 0;
  for (const auto& smp : tr.samples) {
    const double N = secular_hamiltonian_N({smp.y[0], smp.y[1]}, p);
    EXPECT_LT(std::abs(N - N0), 1e-10 * std::abs(N0 - (p.L - 2 * p.mu / std::sqrt(2 * p.S))) + 1e-15);
    lmax = std::max(lmax, std::abs(smp.y[0]));
    Kmax = std::max(Kmax, std::abs(smp.y[1]));
    EXPECT_EQ(smp.y[2], p.L);
  }
  EXPECT_LT(lmax, 0.1 + 1e-9);  // closed curve, lambda librates
  EXPECT_GT(Kmax, 0.0);
  EXPECT_EQ(tr.columns, (std::vector<std::string>{"lambda", "Lambda", "L", "G", "S"}));

  const Trajectory eq = propagate_secular({kPi / 4, *kozai_Lambda_c(p.L, 0.5 * p.L)}, params(0.5), 1e6);
  const Trajectory fixed = propagate_secular({0.0, 0.0}, params(0.5), 1e6);
  EXPECT_NEAR(fixed.back().y[0], 0.0, 1e-15);
  EXPECT_NEAR(fixed.back().y[1], 0.0, 1e-15);
  EXPECT_NEAR(eq.back().y[0], kPi / 4, 1e-9);
}

TEST(Equilibria, KozaiActionExamples) {
  EXPECT_NEAR(*kozai_Lambda_c(1.0, 0.75), std::sqrt(1.5625 - 6 / std::sqrt(15.0)), 1e-15);
  EXPECT_NEAR(*kozai_Lambda_c(1.0, 0.75), 0.115, 5e-4);
  EXPECT_NEAR(*kozai_Lambda_c(2.0, 0.0), 2.0, 1e-15);
  const double gb = std::sqrt(0.6);
  const auto at = kozai_Lambda_c(1.0, gb * (1 - 1e-9));
  ASSERT_TRUE(at);
  EXPECT_LT(*at, 1e-3);
  EXPECT_FALSE(kozai_Lambda_c(1.0, gb * (1 + 1e-9)));
  double prev = 2;
  for (int i = 0; i <= 100; ++i) {
    const auto v = kozai_Lambda_c(1.0, gb * i / 100.0 * (1 - 1e-12));
    ASSERT_TRUE(v);
    EXPECT_LT(*v, prev);
    prev = *v;
  }
}

TEST(Equilibria, KozaiPointsDefiningEquationAndElements) {
  for (double g : {-0.7, -0.3, 0.1, 0.5, 0.75}) {
    const LKParams p = params(g);
    const double Lc = *kozai_Lambda_c(p.L, p.G);
    const ActionCoefficients k = coefficients(p.L, Lc, p.G);
    EXPECT_NEAR(4 - (p.L * p.L + p.G * p.G - Lc * Lc) / (4 * k.C1 * k.C2), 0.0, 1e-12);
    const LKSState s{0.0, 0.8, kPi / 4, 0.3, 0.0, p.S, p.L, Lc, p.G, 0.0};
    const CartesianPhaseExt c = lks_to_cartesian(s);
    const ElementExtraction ex = cartesian_to_elements(c.x, c.X, p.mu);
    ASSERT_TRUE(ex.I);
    // classical fixed-point condition: cos^2 I = 3 (1 - e^2) / 5
    EXPECT_NEAR(0.6 * (1 - ex.e * ex.e), std::pow(std::cos(*ex.I), 2), 1e-10);
  }
}

TEST(Equilibria, ListAndStability) {
  auto count = [](const std::vector<Equilibrium>& v, EquilibriumFamily f, Stability s) {
    return std::count_if(v.begin(), v.end(), [&](const Equilibrium& e) { return e.family == f && e.stability == s; });
  };
  const LKParams p09 = params(0.9);
  const auto e09 = find_equilibria(p09);
  EXPECT_EQ(count(e09, EquilibriumFamily::CircularInclined, Stability::Stable), 4);
  EXPECT_EQ(count(e09, EquilibriumFamily::EquatorialElliptic, Stability::Stable), 4);
  EXPECT_EQ(e09.size(), 8u);

  const LKParams p075 = params(0.75);
  const auto e075 = find_equilibria(p075);
  EXPECT_EQ(count(e075, EquilibriumFamily::CircularInclined, Stability::Unstable), 4);
  EXPECT_EQ(count(e075, EquilibriumFamily::KozaiFixedPoint, Stability::Stable), 8);
  EXPECT_EQ(count(e075, EquilibriumFamily::EquatorialElliptic, Stability::Stable), 4);

  const LKParams p0 = params(0.0);
  const auto e0 = find_equilibria(p0);
  EXPECT_EQ(count(e0, EquilibriumFamily::RadialEquatorial, Stability::Stable), 4);
  EXPECT_EQ(count(e0, EquilibriumFamily::CircularInclined, Stability::Unstable), 4);
  EXPECT_EQ(count(e0, EquilibriumFamily::Vertex, Stability::Degenerate), 2);

  const auto ece = find_equilibria(params(1.0));
  ASSERT_EQ(ece.size(), 1u);
  EXPECT_EQ(ece[0].family, EquilibriumFamily::Vertex);
  EXPECT_FALSE(ece[0].lambda_defined);

  for (const auto* v : {&e09, &e075, &e0}) {
    for (const Equilibrium& e : *v) {
      EXPECT_GT(e.lambda, -kPi);
      EXPECT_LE(e.lambda, kPi);
      if (e.family == EquilibriumFamily::Vertex) continue;
      const LKParams& p = v == &e09 ? p09 : v == &e075 ? p075 : p0;
      const auto [dl, dK] = secular_rhs({e.lambda, e.Lambda}, p);
      const double scale = secular_B(p) * p.L * p.L;
      EXPECT_LT(std::abs(dl) * p.L + std::abs(dK), 1e-12 * scale);
      // eigenvalues against the finite-difference Jacobian
      const auto fd = fd_eigenvalues({e.lambda, e.Lambda}, p);
      const double lam_scale = secular_B(p) * p.L * p.L;
      const double got = std::max(std::abs(e.eigenvalues[0]), std::abs(e.eigenvalues[1]));
      const double ref = std::max(std::abs(fd[0]), std::abs(fd[1]));
      EXPECT_NEAR(got, ref, 1e-5 * lam_scale);
      if (e.stability == Stability::Stable) {
        EXPECT_LT(std::abs(fd[0].real()), 1e-5 * lam_scale);
        EXPECT_GT(std::abs(fd[0].imag()), 1e-3 * lam_scale);
      } else if (e.stability == Stability::Unstable) {
        EXPECT_LT(std::abs(fd[0].imag()), 1e-5 * lam_scale);
        EXPECT_GT(std::abs(fd[0].real()), 1e-3 * lam_scale);
      }
    }
  }
}

TEST(Equilibria, VertexExtremaAndDegenerateReport) {
  for (double g : {0.0, 1.0}) {
    const LKParams p = params(g);
    for (const Equilibrium& e : find_equilibria(p)) {
      if (e.family != EquilibriumFamily::Vertex) continue;
      EXPECT_EQ(e.stability, Stability::Degenerate);
      EXPECT_FALSE(e.extremum.empty());
      const StabilityResult st = stability(e, p);
      EXPECT_EQ(st.stability, Stability::Degenerate);
    }
  }
  // polar radial vertices are maxima of N: the Kozai-like drift pushes toward them
  for (const Equilibrium& e : find_equilibria(params(0.0)))
    if (e.family == EquilibriumFamily::Vertex) EXPECT_EQ(e.extremum, "max");
}

TEST(EquilibriaProperty, RootScanFindsNoUnreportedEquilibrium) {
  for (double g : {0.0, 0.3, 0.75, 0.9}) {
    const LKParams p = params(g);
    const double w = p.L - std::abs(p.G);
    const int n = 101;
    const auto lg = uniform_grid(-kPi, kPi, n);
    const auto Kg = uniform_grid(-0.995 * w, 0.995 * w, n);
    std::vector<std::pair<double, double>> f(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) f[i * n + j] = secular_rhs({lg[j], Kg[i]}, p);
    const auto eqs = find_equilibria(p);
    const double dl = lg[1] - lg[0], dK = Kg[1] - Kg[0];
    int flagged = 0;
    for (int i = 0; i + 1 < n; ++i) {
      for (int j = 0; j + 1 < n; ++j) {
        bool apos = false, aneg = false, bpos = false, bneg = false;
        for (int di = 0; di < 2; ++di)
          for (int dj = 0; dj < 2; ++dj) {
            const auto [a, b] = f[(i + di) * n + j + dj];
            (a >= 0 ? apos : aneg) = true;
            (b >= 0 ? bpos : bneg) = true;
          }
        if (!(apos && aneg && bpos && bneg)) continue;
        ++flagged;
        const double lc = 0.5 * (lg[j] + lg[j + 1]), Kc = 0.5 * (Kg[i] + Kg[i + 1]);
        const bool covered = std::any_of(eqs.begin(), eqs.end(), [&](const Equilibrium& e) {
          const double d = std::abs(std::remainder(e.lambda - lc, 2 * kPi));
          return d <= 1.5 * dl && std::abs(e.Lambda - Kc) <= 1.5 * dK;
        });
        EXPECT_TRUE(covered) << "G/L=" << g << " lambda=" << lc << " Lambda=" << Kc;
      }
    }
    EXPECT_GT(flagged, 0);
  }
}

TEST(Portrait, TopologyAndSymmetry) {
  const LKParams p = params(0.75);
  const PhasePortrait pp = phase_portrait(p, 121, 81, 2);
  ASSERT_EQ(pp.N.size(), 121u * 81u);
  for (double v : pp.N) EXPECT_TRUE(std::isfinite(v));
  int centres = 0, saddles = 0;
  for (const Equilibrium& e : pp.equilibria) {
    if (std::abs(e.lambda) > kPi / 2 + 1e-12) continue;
    if (e.family == EquilibriumFamily::KozaiFixedPoint && e.stability == Stability::Stable) ++centres;
    if (e.family == EquilibriumFamily::CircularInclined && e.stability == Stability::Unstable) ++saddles;
  }
  EXPECT_EQ(centres, 4);
  EXPECT_EQ(saddles, 2);
  ASSERT_EQ(pp.separatrix_levels.size(), 1u);
  EXPECT_NEAR(pp.separatrix_levels[0], secular_hamiltonian_N({kPi / 4, 0.0}, p), 1e-15);
  // N(lambda + pi/2, Lambda) = N(lambda, Lambda) = N(lambda, -Lambda) = N(-lambda, Lambda)
  oracle::Rng rng(45);
  const double w = p.L - std::abs(p.G);
  for (int i = 0; i < 200; ++i) {
    const SecularState s{rng.uniform(-kPi, kPi), rng.uniform(-w, w)};
    const double N = secular_hamiltonian_N(s, p);
    EXPECT_NEAR(secular_hamiltonian_N({s.lambda + kPi / 2, s.Lambda}, p), N, 1e-14);
    EXPECT_NEAR(secular_hamiltonian_N({s.lambda, -s.Lambda}, p), N, 1e-14);
    EXPECT_NEAR(secular_hamiltonian_N({-s.lambda, s.Lambda}, p), N, 1e-14);
  }
  // deterministic regardless of thread count
  const PhasePortrait one = phase_portrait(p, 121, 81, 1);
  EXPECT_EQ(one.N, pp.N);
  const std::string csv = pp.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "lambda,Lambda,N");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 121 * 81);
}

TEST(Portrait, GridIsClipped) {
  const LKParams p = params(0.5);
  const PhasePortrait pp = phase_portrait(p, {-4.0, 0.0, 4.0}, {-5.0, 0.0, 5.0});
  EXPECT_EQ(pp.lambdas.front(), -kPi);
  EXPECT_EQ(pp.lambdas.back(), kPi);
  EXPECT_EQ(pp.Lambdas.back(), p.L - std::abs(p.G));
}
