#include <gtest/gtest.h>

#include <cmath>

#include "lks/errors.hpp"
#include "lks/ode.hpp"

using namespace lks;

namespace {

const OdeRhs kOscillator = [](const OdeState& y, OdeState& d, double) {
  d[0] = y[1];
  d[1] = -y[0];
};

}  // namespace

TEST(Ode, HarmonicOscillatorMatchesClosedForm) {
  OdeState y{1.0, 0.0};
  const OdeStats st = integrate_adaptive(kOscillator, y, 0.0, 20.0, {});
  EXPECT_NEAR(y[0], std::cos(20.0), 1e-11);
  EXPECT_NEAR(y[1], -std::sin(20.0), 1e-11);
  EXPECT_GT(st.accepted, 0u);
  EXPECT_GE(st.rhs_calls, st.accepted);
}

TEST(Ode, StrideSamplesLandExactly) {
  OdeState y{1.0, 0.0};
  OdeOptions opt;
  opt.stride = 0.25;
  std::vector<double> ts;
  integrate_adaptive(kOscillator, y, 1.0, 3.1, opt, [&](const OdeState& v, double t) {
    ts.push_back(t);
    EXPECT_NEAR(v[0], std::cos(t - 1.0), 1e-11);
  });
  ASSERT_EQ(ts.size(), 10u);  // 1.0, 1.25, ..., 3.0, 3.1
  for (std::size_t i = 0; i + 1 < ts.size() - 1; ++i) EXPECT_DOUBLE_EQ(ts[i], 1.0 + 0.25 * double(i));
  EXPECT_EQ(ts.back(), 3.1);
}

TEST(Ode, ObserverSeesStrictlyIncreasingTime) {
  OdeState y{1.0, 0.0};
  Trajectory tr;
  tr.columns = {"q", "p"};
  integrate_adaptive(kOscillator, y, 0.0, 5.0, {}, [&](const OdeState& v, double t) { tr.push(t, v); });
  ASSERT_GT(tr.size(), 2u);
  for (std::size_t i = 1; i < tr.size(); ++i) EXPECT_GT(tr.samples[i].t, tr.samples[i - 1].t);
  const std::size_t n = tr.size();
  tr.push(tr.back().t, {0, 0});
  EXPECT_EQ(tr.size(), n);
}

TEST(Ode, TrajectoryCsv) {
  Trajectory tr;
  tr.time_variable = TimeVariable::SundmanTime;
  tr.columns = {"a", "b"};
  tr.push(0.0, {1.0, 0.1});
  tr.push(0.5, {2.0, -1.0 / 3.0});
  EXPECT_EQ(tr.to_csv(), "tau,a,b\n0,1,0.10000000000000001\n0.5,2,-0.33333333333333331\n");
  EXPECT_EQ(to_string(TimeVariable::PhysicalTime), "t");
}

TEST(Ode, FailuresAreReported) {
  // blow-up at t = 1
  const OdeRhs riccati = [](const OdeState& y, OdeState& d, double) { d[0] = y[0] * y[0]; };
  OdeState y{1.0};
  try {
    integrate_adaptive(riccati, y, 0.0, 2.0, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::StepFailure);
    EXPECT_EQ(e.category(), ErrorCategory::Numerical);
  }
  OdeState z{1.0, 0.0};
  OdeOptions opt;
  opt.max_steps = 3;
  EXPECT_THROW(integrate_adaptive(kOscillator, z, 0.0, 100.0, opt), Error);
  OdeState w{1.0, 0.0};
  EXPECT_THROW(integrate_adaptive(kOscillator, w, 1.0, 0.0, {}), Error);
}
