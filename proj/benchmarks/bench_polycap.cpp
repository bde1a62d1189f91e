#include <benchmark/benchmark.h>

#include "polycap/analytic.hpp"
#include "polycap/capacity.hpp"
#include "polycap/domain_io.hpp"

using namespace polycap;

static void BM_Discretize(benchmark::State& state) {
  const auto lens = builtin_domain("lens-0.8-0.3");
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(discretize(lens, n, 3));
}
BENCHMARK(BM_Discretize)->Arg(256)->Arg(1024);

static void BM_KernelRow(benchmark::State& state) {
  const auto lens = builtin_domain("lens-0.8-0.3");
  const int n = static_cast<int>(state.range(0));
  const NystromSystem sys(discretize(lens, n, 3), {0.9, 0.0});
  const int total = 2 * n;
  for (auto _ : state) {
    double acc = 0.0;
    for (int j = 0; j < total; ++j) acc += sys.kernel_N(0, j);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_KernelRow)->Arg(256)->Arg(1024)->Arg(4096);

static void BM_ApplyM(benchmark::State& state) {
  const auto lens = builtin_domain("lens-0.8-0.3");
  const int n = static_cast<int>(state.range(0));
  NystromSystem sys(discretize(lens, n, 3), {0.9, 0.0});
  const Eigen::VectorXd g = sys.gamma({0.0, 0.0});
  for (auto _ : state) benchmark::DoNotOptimize(sys.apply_M(g));
}
BENCHMARK(BM_ApplyM)->Arg(256)->Arg(1024);

static void BM_DensitySolve(benchmark::State& state) {
  const auto lens = builtin_domain("lens-0.8-0.3");
  const int n = static_cast<int>(state.range(0));
  SolverOptions opts;
  opts.method = state.range(1) == 0 ? SolverOptions::Method::Dense
                                    : SolverOptions::Method::Gmres;
  for (auto _ : state) {
    state.PauseTiming();  // exclude discretization, keep factorization cost in
    NystromSystem sys(discretize(lens, n, 3), {0.9, 0.0}, opts);
    const Eigen::VectorXd g = sys.gamma({0.0, 0.0});
    state.ResumeTiming();
    benchmark::DoNotOptimize(sys.solve_density(g));
  }
}
BENCHMARK(BM_DensitySolve)->Args({256, 0})->Args({256, 1})->Args({1024, 1});

static void BM_Capacity(benchmark::State& state) {
  CapacityRequest req;
  req.condenser = builtin_domain(state.range(0) == 0 ? "annulus-0.7"
                                                     : "lens-0.8-0.3");
  req.n = static_cast<int>(state.range(1));
  req.solver.method = SolverOptions::Method::Gmres;
  for (auto _ : state) benchmark::DoNotOptimize(compute_capacity(req));
}
BENCHMARK(BM_Capacity)->Args({0, 256})->Args({1, 256})->Args({1, 1024});

static void BM_EllipK(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ellip_K(0.7));
}
BENCHMARK(BM_EllipK);

static void BM_HyperbolicPerimeter(benchmark::State& state) {
  const auto lens = make_lens(0.8, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(hyperbolic_perimeter(lens));
}
BENCHMARK(BM_HyperbolicPerimeter);

BENCHMARK_MAIN();
