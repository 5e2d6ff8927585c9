// Serial vs objectwise-parallel timings of the kernels that take Options::parallel.
// Arg 0 runs serially, arg 1 runs with the OpenMP path.

#include <benchmark/benchmark.h>

#include "dgc/derived.hpp"
#include "dgc/fixtures.hpp"
#include "dgc/parallel.hpp"

using namespace dgc;

namespace {

const Field Q = Field::rationals();

Options with_parallel(bool on) {
  Options o = default_options();
  o.parallel = on;
  return o;
}

Bimodule diag_dual() { return diagonal(fixtures::dual_numbers(Q)); }

Bimodule diag_tensor() {
  CatPtr A = fixtures::q2(Q);
  return diagonal(tensor_dgcat(*A, *A));
}

void BM_Diamond(benchmark::State& state) {
  const Bimodule D = diag_tensor();
  const Options opt = with_parallel(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(diamond(D, D, opt).module.total_dim());
  state.counters["threads"] = state.range(0) ? parallel_threads() : 1;
}
BENCHMARK(BM_Diamond)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_StructuralMaps(benchmark::State& state) {
  const Bimodule D = diag_tensor();
  const Options opt = with_parallel(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(structural_maps(D, opt).t.comps.size());
}
BENCHMARK(BM_StructuralMaps)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_QuasiRepresentable(benchmark::State& state) {
  const Bimodule D = diag_tensor();
  const Options opt = with_parallel(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(is_right_quasi_representable(D, opt).witness.has_value());
}
BENCHMARK(BM_QuasiRepresentable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BarResolution(benchmark::State& state) {
  const Bimodule D = diag_dual();
  Options opt = default_options();
  opt.depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bar_resolution(D, opt).resolved.total_dim());
}
BENCHMARK(BM_BarResolution)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
