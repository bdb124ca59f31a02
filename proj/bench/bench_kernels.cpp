// Serial reference vs OpenMP kernels. Arg 0 = serial, 1 = parallel.

#include "dbound/estimator.hpp"
#include "dbound/simulation/oracle.hpp"
#include "dbound/simulation/positioning.hpp"
#include "dbound/simulation/tracking.hpp"

#include <benchmark/benchmark.h>

using namespace dbound;

namespace {

sim::RunOptions options_for(const benchmark::State& state) {
  return state.range(0) ? sim::RunOptions{} : sim::serial_options();
}

Gaussian two_object_prior() {
  const Matrix c1 = (Matrix(2, 2) << 0.1, 0.05, 0.05, 0.1).finished();
  return {(Vector(4) << 0, 0, 0.8, 0.8).finished(), direct_sum(c1, 0.2 * Matrix::Identity(2, 2))};
}

void BM_Estimate(benchmark::State& state) {
  const PreparedProblem problem(StatePartition(2, 0), DistanceBound(1.0));
  const Gaussian prior = two_object_prior();
  for (auto _ : state) benchmark::DoNotOptimize(problem.estimate(prior));
}
BENCHMARK(BM_Estimate);

void BM_Oracle(benchmark::State& state) {
  const Gaussian prior = two_object_prior();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sim::oracle_conditional_moments(prior, StatePartition(2, 0), 1.0, 1'000'000, 1, options_for(state)));
  }
}
BENCHMARK(BM_Oracle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Positioning(benchmark::State& state) {
  sim::PositioningConfig c;
  c.runs = 1000;
  const std::vector<double> values{0.1, 0.5, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sim::run_positioning(c, sim::SweepAxis::sigma1, values, options_for(state)));
  }
}
BENCHMARK(BM_Positioning)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Tracking(benchmark::State& state) {
  sim::TrackingConfig c;
  c.runs = 100;
  c.steps = 200;
  for (auto _ : state) benchmark::DoNotOptimize(sim::run_tracking(c, options_for(state)));
}
BENCHMARK(BM_Tracking)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
