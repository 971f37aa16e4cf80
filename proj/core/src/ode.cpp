#include "lks/ode.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <boost/numeric/odeint/stepper/controlled_runge_kutta.hpp>
#include <boost/numeric/odeint/stepper/generation.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>

#include "lks/errors.hpp"

namespace lks {

namespace odeint = boost::numeric::odeint;

std::string to_string(TimeVariable t) { return t == TimeVariable::PhysicalTime ? "t" : "tau"; }

void Trajectory::push(double t, std::vector<double> y) {
  if (!samples.empty() && !(t > samples.back().t)) return;
  samples.push_back({t, std::move(y)});
}

std::string Trajectory::to_csv() const {
  std::ostringstream os;
  os << to_string(time_variable);
  for (const auto& c : columns) os << ',' << c;
  os << '\n';
  char buf[40];
  for (const auto& s : samples) {
    std::snprintf(buf, sizeof buf, "%.17g", s.t);
    os << buf;
    for (double v : s.y) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      os << ',' << buf;
    }
    os << '\n';
  }
  return os.str();
}

OdeStats integrate_adaptive(const OdeRhs& rhs, OdeState& y, double t0, double t1, const OdeOptions& opt,
                            const OdeObserver& observer) {
  if (!(t1 >= t0)) fail(ErrorKind::InvalidArgument, "integration span must be nondecreasing");
  if (opt.stride && !(*opt.stride > 0.0)) fail(ErrorKind::InvalidArgument, "sampling stride must be positive");
  OdeStats stats;
  if (observer) observer(y, t0);
  if (t1 == t0) return stats;

  const double span = t1 - t0;
  const double h_min = opt.min_step > 0.0 ? opt.min_step : 1e-14 * span;
  double h = opt.initial_step > 0.0 ? opt.initial_step : span * 1e-3;

  auto stepper = odeint::make_controlled(opt.abs_tol, opt.rel_tol, odeint::runge_kutta_fehlberg78<OdeState>());
  auto counted = [&](const OdeState& s, OdeState& d, double t) {
    ++stats.rhs_calls;
    rhs(s, d, t);
  };

  double t = t0;
  std::size_t next_index = 1;
  auto next_sample = [&]() { return opt.stride ? std::min(t1, t0 + double(next_index) * *opt.stride) : t1; };

  while (t < t1) {
    if (stats.accepted + stats.rejected >= opt.max_steps) fail(ErrorKind::StepFailure, "step budget exhausted");
    const double target = next_sample();
    const bool clipped = t + h >= target;
    double dt = clipped ? target - t : h;
    const auto res = stepper.try_step(counted, y, t, dt);
    if (res == odeint::fail) {
      ++stats.rejected;
      h = dt;
      if (h < h_min) fail(ErrorKind::StepFailure, "step size underflow");
      continue;
    }
    for (double v : y)
      if (!std::isfinite(v)) fail(ErrorKind::StepFailure, "non-finite state during integration");
    ++stats.accepted;
    // Keep the controller's proposal unless the step was shortened to land on a sample.
    if (!clipped || dt > h) h = dt;
    if (clipped) {
      t = target;  // land exactly
      if (opt.stride) ++next_index;
    }
    if (observer && (!opt.stride || clipped)) observer(y, t);
  }
  return stats;
}

}  // namespace lks
