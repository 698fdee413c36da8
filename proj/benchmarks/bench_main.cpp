// bench_main.cpp — microbenchmarks for the hot paths: the parabolic cylinder
// evaluator, the polynomial spin propagator, the adaptive pair integrator,
// and the subspace evolution / kernel assembly built on top of them.
#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "oscamp/oscillator.hpp"
#include "oscamp/scenario.hpp"
#include "oscamp/specfun.hpp"
#include "oscamp/su2.hpp"

using namespace oscamp;

namespace {

// Sweep-ray cylinder-function evaluation: |z| below 10 exercises the
// compensated power series, above it the asymptotic expansion.
void BM_pcf_d(benchmark::State& state) {
  const double r = static_cast<double>(state.range(0));
  const Complex z = Complex{std::sqrt(0.5), -std::sqrt(0.5)} * r;
  const Complex nu{-1.0, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(pcf_d(nu, z));
  }
}
BENCHMARK(BM_pcf_d)->Arg(3)->Arg(8)->Arg(20);

void BM_spin_propagator(benchmark::State& state) {
  const int two_s = static_cast<int>(state.range(0));
  const auto p = solve_constant(1.0, 0.4, 2.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(spin_propagator(two_s, p));
  }
}
BENCHMARK(BM_spin_propagator)->Arg(1)->Arg(10)->Arg(30);

void BM_solve_numeric_sweep(benchmark::State& state) {
  const Scenario s{Lmsz{1.0, 1.0, -20.0, 20.0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_numeric(s, -20.0, 20.0, 1e-12));
  }
}
BENCHMARK(BM_solve_numeric_sweep);

void BM_block_evolution_standard(benchmark::State& state) {
  const Scenario s{Rabi{1.0, 0.1, 0.5}};
  const PairEvaluator pairs(s, ModelKind::Standard, 1e-12);
  double t = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        block_evolution(ModelKind::Standard, s, 6, t, pairs));
    t = (t < 20.0) ? t + 0.1 : 1.0;  // vary the sample time across iterations
  }
}
BENCHMARK(BM_block_evolution_standard);

void BM_coordinate_kernel(benchmark::State& state) {
  const Scenario s{Constant{1.0, 0.1}};
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> x(-2.0, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(coordinate_kernel(ModelKind::Amplifier, s, 3, 2.0,
                                               x(rng), x(rng), x(rng), x(rng),
                                               1.0, 1.0));
  }
}
BENCHMARK(BM_coordinate_kernel);

}  // namespace

BENCHMARK_MAIN();
