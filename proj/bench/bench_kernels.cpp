// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include "msr/constructions.hpp"
#include "msr/family.hpp"
#include "msr/pgl.hpp"
#include "msr/search.hpp"

using namespace msr;

namespace {

// GF(2)^{4x4}: 65536 candidates, 20160 units.
const MatrixSpace& gl4_2() {
  static const MatrixSpace a = full_matrix_space(Field::get(2), 4);
  return a;
}

// No g can move the whole space off itself, so the search is exhaustive.
const Subspace& whole_space() {
  static const Subspace v = Subspace::full(Field::get(2), 4);
  return v;
}

int jobs_arg(const benchmark::State& state) { return static_cast<int>(state.range(0)); }

void BM_AlgebraUnitsSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(algebra_units_serial(gl4_2()));
}
BENCHMARK(BM_AlgebraUnitsSerial)->Unit(benchmark::kMillisecond);

void BM_AlgebraUnitsParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(algebra_units_parallel(gl4_2(), jobs_arg(state)));
}
BENCHMARK(BM_AlgebraUnitsParallel)->Arg(0)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SearchAlgebraSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(search_algebra_serial(gl4_2(), whole_space(), kDefaultCap));
}
BENCHMARK(BM_SearchAlgebraSerial)->Unit(benchmark::kMillisecond);

void BM_SearchAlgebraParallel(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(search_algebra_parallel(gl4_2(), whole_space(), kDefaultCap, jobs_arg(state)));
}
BENCHMARK(BM_SearchAlgebraParallel)->Arg(0)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_DecideMsr(benchmark::State& state) {
  const SubspaceFamily fam = extremal_lineset(Field::get(3));
  for (auto _ : state) benchmark::DoNotOptimize(decide_msr(fam, kDefaultCap, jobs_arg(state)));
}
BENCHMARK(BM_DecideMsr)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_ClassifyQ3Anchored(benchmark::State& state) {
  SearchOptions opts;
  opts.jobs = jobs_arg(state);
  for (auto _ : state)
    benchmark::DoNotOptimize(classify_all(Field::get(3), 2, SearchMode::DisjointTripleAnchored, opts));
}
BENCHMARK(BM_ClassifyQ3Anchored)->Arg(1)->Arg(0)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
