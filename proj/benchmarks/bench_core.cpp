// Hot paths: the radial Laplacian, one RK4 step, the comparison ODE, the
// threshold supremum and the cutoff integrals.

#include <benchmark/benchmark.h>

#include <vector>

#include "flrw/comparison_ode.hpp"
#include "flrw/field_solver.hpp"
#include "flrw/scaling.hpp"
#include "flrw/thresholds.hpp"

using namespace flrw;

namespace {

CosmologyParams contracting() {
  CosmologyParams q;
  q.n = 3;
  q.H = -1.0;
  q.sigma = -3.0;
  q.m_sq = -1.0;
  return q;
}

// The free function rebuilds the cell geometry per call; the RK4 stepper
// caches it, so BM_Rk4Step is the cost seen by run_until.
void BM_RadialLaplacian(benchmark::State& state) {
  const double dr = 1.0 / static_cast<double>(state.range(0));
  GridSpec grid;
  grid.dr = dr;
  grid.r_max = 4.0;
  BumpSpec bump;
  FieldState s = init_field(bump, grid, 3);
  std::vector<double> out;
  for (auto _ : state) {
    radial_laplacian(s.u, 3, dr, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.size()));
}
BENCHMARK(BM_RadialLaplacian)->Arg(256)->Arg(1024);

void BM_Rk4Step(benchmark::State& state) {
  CosmologyParams q;
  q.n = 1;
  q.m_sq = -1.0;
  GridSpec grid;
  grid.dr = 1.0 / 256.0;
  grid.r_max = 4.0;
  BumpSpec bump;
  bump.r0 = 0.5;
  const FieldState s = init_field(bump, grid, q.n);
  const double dt = cfl_dt(q, s);
  for (auto _ : state) benchmark::DoNotOptimize(step(q, 1.0, 2.0, s, dt));
}
BENCHMARK(BM_Rk4Step);

void BM_ComparisonOde(benchmark::State& state) {
  const CosmologyParams q = contracting();
  const ConeData cone{1.0, q};
  const double N = damping_rate_N(q).N;
  const double S = threshold_S(cone, 1.0, 1.5, 0.5, N);
  const OdeProblem pr = make_comparison_problem(cone, 1.0, 1.5, 0.5, N, 2.0 * S, 2.0 * S * N, 30.0);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_comparison(pr));
}
BENCHMARK(BM_ComparisonOde)->Unit(benchmark::kMicrosecond);

void BM_ThresholdS(benchmark::State& state) {
  const CosmologyParams q = contracting();
  const ConeData cone{1.0, q};
  const double N = damping_rate_N(q).N;
  for (auto _ : state) benchmark::DoNotOptimize(threshold_S(cone, 1.0, 1.5, 0.5, N));
}
BENCHMARK(BM_ThresholdS)->Unit(benchmark::kMicrosecond);

void BM_CutoffIntegrals(benchmark::State& state) {
  const ConeData cone{1.0, contracting()};
  for (auto _ : state) {
    benchmark::DoNotOptimize(II_prime(cone, 100.0));
    benchmark::DoNotOptimize(III_prime(cone, 100.0, 1.5));
  }
}
BENCHMARK(BM_CutoffIntegrals)->Unit(benchmark::kMicrosecond);

void BM_ScalingHypotheses(benchmark::State& state) {
  const ConeData cone{1.0, contracting()};
  for (auto _ : state) benchmark::DoNotOptimize(scaling_hypotheses(cone, 1.5));
}
BENCHMARK(BM_ScalingHypotheses)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
