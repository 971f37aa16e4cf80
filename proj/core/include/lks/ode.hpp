#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lks {

enum class TimeVariable { PhysicalTime, SundmanTime };

std::string to_string(TimeVariable t);

struct TrajectorySample {
  double t = 0.0;
  std::vector<double> y;
};

// Samples with strictly increasing independent variable.
struct Trajectory {
  TimeVariable time_variable = TimeVariable::PhysicalTime;
  std::string chart;
  std::vector<std::string> columns;  // names of the state components
  std::vector<TrajectorySample> samples;

  void push(double t, std::vector<double> y);
  const TrajectorySample& back() const { return samples.back(); }
  std::size_t size() const noexcept { return samples.size(); }
  std::string to_csv() const;
};

struct OdeOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  double initial_step = 0.0;  // 0 picks a step from the span
  double min_step = 0.0;      // 0 means 1e-14 * |span|
  std::size_t max_steps = 50'000'000;
  std::optional<double> stride;  // sample at fixed stride instead of at every accepted step
};

using OdeState = std::vector<double>;
using OdeRhs = std::function<void(const OdeState& y, OdeState& dydt, double t)>;
// Called at t0, at every sample and at t1. May throw to abort the integration.
using OdeObserver = std::function<void(const OdeState& y, double t)>;

struct OdeStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_calls = 0;
};

// Adaptive 7(8) Runge-Kutta-Fehlberg integration from t0 to t1 (t1 > t0). y holds the final state.
// Throws StepFailure when the step size underflows or the step budget is exhausted.
OdeStats integrate_adaptive(const OdeRhs& rhs, OdeState& y, double t0, double t1, const OdeOptions& options,
                            const OdeObserver& observer = {});

}  // namespace lks
