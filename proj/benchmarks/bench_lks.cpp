#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "lks/lks.hpp"

using namespace lks;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

CartesianPhaseExt phase_of(const KeplerElements& el, double mu) {
  const CartesianState cs = elements_to_cartesian(el, mu);
  return {0.0, cs.x, mu / (2 * el.a), cs.X};
}

const KeplerElements kSample{10.0, 0.5, 10 * kDeg, 60 * kDeg, 10 * kDeg, 60 * kDeg};

void BM_QuaternionMul(benchmark::State& state) {
  Quaternion a{0.3, {0.1, -0.7, 0.2}}, b{-0.5, {0.4, 0.25, 0.9}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(a);
    benchmark::DoNotOptimize(b);
    benchmark::DoNotOptimize(mul(a, b));
  }
}
BENCHMARK(BM_QuaternionMul);

void BM_CartesianToLks(benchmark::State& state) {
  const CartesianPhaseExt p = phase_of(kSample, 1.0);
  const GaugeAlpha g = GaugeAlpha::sqrt8S();
  for (auto _ : state) benchmark::DoNotOptimize(cartesian_to_lks(p, g));
}
BENCHMARK(BM_CartesianToLks);

void BM_LksToCartesian(benchmark::State& state) {
  const LKSState s = cartesian_to_lks(phase_of(kSample, 1.0), GaugeAlpha::sqrt8S());
  for (auto _ : state) benchmark::DoNotOptimize(lks_to_cartesian(s));
}
BENCHMARK(BM_LksToCartesian);

void BM_SecularRhs(benchmark::State& state) {
  const LKParams p = LKParams::from_actions(1.0, 0.75);
  SecularState s{0.3, 0.2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(s);
    benchmark::DoNotOptimize(secular_rhs(s, p));
  }
}
BENCHMARK(BM_SecularRhs);

void BM_PhasePortrait(benchmark::State& state) {
  const LKParams p = LKParams::from_actions(1.0, 0.75);
  const auto n = std::size_t(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(phase_portrait(p, n, n, unsigned(state.range(1))));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_PhasePortrait)->Args({181, 1})->Args({181, 0})->Unit(benchmark::kMillisecond);

// Near-parabolic orbit: the Cartesian integrator has to resolve every pericentre passage.
void BM_CartesianOracleHighEccentricity(benchmark::State& state) {
  const double mu = 1.0;
  const KeplerElements el{1.0, 0.999, 20 * kDeg, 30 * kDeg, 40 * kDeg, 0.0};
  const CartesianPhaseExt p = phase_of(el, mu);
  const double period = 2 * std::numbers::pi;
  double energy_error = 0.0;
  for (auto _ : state) {
    const CartesianPhaseExt q = cartesian_oracle_state(p, mu, std::nullopt, 3 * period);
    energy_error = std::abs(balancing_energy(q, mu, std::nullopt) - q.X_star) / q.X_star;
    benchmark::DoNotOptimize(q);
  }
  state.counters["rel_energy_error"] = energy_error;
}
BENCHMARK(BM_CartesianOracleHighEccentricity)->Unit(benchmark::kMillisecond);

void BM_KeplerFlowLksHighEccentricity(benchmark::State& state) {
  const double mu = 1.0;
  const KeplerElements el{1.0, 0.999, 20 * kDeg, 30 * kDeg, 40 * kDeg, 0.0};
  const GaugeAlpha g = GaugeAlpha::sqrt8S();
  const LKSState s0 = cartesian_to_lks(phase_of(el, mu), g);
  for (auto _ : state) benchmark::DoNotOptimize(lks_to_cartesian(kepler_flow_lks(s0, 3 * std::numbers::pi, g, mu)));
}
BENCHMARK(BM_KeplerFlowLksHighEccentricity);

}  // namespace

BENCHMARK_MAIN();
