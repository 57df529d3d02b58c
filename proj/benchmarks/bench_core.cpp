#include <benchmark/benchmark.h>

#include "nygap/harness.hpp"
#include "nygap/kernel.hpp"
#include "nygap/linalg.hpp"
#include "nygap/nystrom.hpp"
#include "nygap/operator_analysis.hpp"

namespace {

using namespace nygap;

PointSet bench_points(std::size_t n) {
  return synth_clusters(3, n / 3, 6.0, 1.0, 4, 42);
}

KernelSpec bench_spec(const PointSet& ps) {
  KernelSpec spec;
  spec.d2 = mean_squared_distance(ps);
  return spec;
}

void BM_gram_matrix(benchmark::State& state) {
  const PointSet ps = bench_points(static_cast<std::size_t>(state.range(0)));
  const KernelSpec spec = bench_spec(ps);
  for (auto _ : state) benchmark::DoNotOptimize(gram_matrix(ps, spec));
}
BENCHMARK(BM_gram_matrix)->Arg(150)->Arg(300)->Arg(600);

void BM_sym_eigen(benchmark::State& state) {
  const PointSet ps = bench_points(static_cast<std::size_t>(state.range(0)));
  const SymMatrix k = gram_matrix(ps, bench_spec(ps));
  for (auto _ : state) benchmark::DoNotOptimize(sym_eigen(k));
}
BENCHMARK(BM_sym_eigen)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_nystrom_approximate(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const PointSet ps = bench_points(n);
  const SymMatrix k = gram_matrix(ps, bench_spec(ps));
  const NystromModel model = build_model(k, sample_uniform(n, n / 5, 7), 3);
  for (auto _ : state) benchmark::DoNotOptimize(approximate(model));
}
BENCHMARK(BM_nystrom_approximate)->Arg(300)->Arg(600);

void BM_run_trial(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const DataSource data = bench_points(n);
  KernelSpec spec;
  spec.d2 = 0.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(run_trial(data, spec, 3, n / 5, 11));
}
BENCHMARK(BM_run_trial)->Arg(150)->Arg(300)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
