#include <benchmark/benchmark.h>

#include <cmath>

#include "ccfrag/moments.hpp"
#include "ccfrag/solver.hpp"

using namespace ccfrag;

namespace {

SolverConfig make_config(std::size_t cells, unsigned threads) {
  SolverConfig cfg;
  cfg.grid = build_geometric_grid(1e-3, 1e3, cells);
  CoagulationKernel K;
  K.family = CoagFamily::kGranulation;
  K.a = 1.0;
  K.b = 0.5;
  K.k1 = 1.0;
  K.mu = 1.0;
  K.sigma = 0.5;
  CollisionKernel C;
  C.family = CollisionFamily::kConstant;
  C.k2 = 0.1;
  cfg.kernels = truncate(K, C, 1000);
  cfg.breakup.family = BreakupFamily::kPowerLaw;
  cfg.breakup.nu = 0.0;
  cfg.n_threads = threads;
  return cfg;
}

void BM_rhs(benchmark::State& bm) {
  const auto cells = static_cast<std::size_t>(bm.range(0));
  const auto threads = static_cast<unsigned>(bm.range(1));
  SolverConfig cfg = make_config(cells, threads);
  SectionalOperator op(cfg.grid, cfg.kernels, cfg.breakup, threads);
  State state{0.0,
              project_initial_condition(cfg.grid,
                                        [](double x) { return std::exp(-x); }),
              0};
  for (auto _ : bm) {
    benchmark::DoNotOptimize(op.rhs(state));
  }
}
BENCHMARK(BM_rhs)
    ->Args({120, 1})
    ->Args({120, 4})
    ->Args({240, 1})
    ->Args({240, 4});

void BM_short_run(benchmark::State& bm) {
  SolverConfig cfg = make_config(80, 1);
  cfg.t_end = 0.05;
  cfg.dt_tol = 1e-5;
  cfg.sample_count = 2;
  const auto g0 = project_initial_condition(
      cfg.grid, [](double x) { return std::exp(-x); });
  for (auto _ : bm) {
    benchmark::DoNotOptimize(run(cfg, g0));
  }
}
BENCHMARK(BM_short_run);

}  // namespace

BENCHMARK_MAIN();
