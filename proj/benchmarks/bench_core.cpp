#include <benchmark/benchmark.h>

#include "densitylab/density.hpp"
#include "densitylab/monad.hpp"
#include "densitylab/productset.hpp"
#include "densitylab/progressions.hpp"

using namespace densitylab;

namespace {

void BM_SquarefreeMaterialize(benchmark::State& state) {
  const auto hi = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(materialize(SetSpec::squarefree(), 1, hi).size());
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_SquarefreeMaterialize)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

void BM_BanachWindowSup(benchmark::State& state) {
  const u64 horizon = 1'000'000;
  const MemberSource src(SetSpec::squarefree(), horizon);
  for (auto _ : state) benchmark::DoNotOptimize(banach_window_sup(src, static_cast<u64>(state.range(0)), horizon).value);
}
BENCHMARK(BM_BanachWindowSup)->Arg(10)->Arg(1000)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_LbdEstimate(benchmark::State& state) {
  const u64 horizon = 1'000'000;
  const MemberSource src(SetSpec::primes(), horizon);
  for (auto _ : state) benchmark::DoNotOptimize(lbd_estimate(src, 1000, horizon).value);
}
BENCHMARK(BM_LbdEstimate)->Unit(benchmark::kMillisecond);

void BM_NuTeraWindow(benchmark::State& state) {
  const Window w(1, 1'000'000'000'000ULL);
  const auto s = IntervalSet::from_components({{1000, 1'000'000}, {10'000'000, 900'000'000'000ULL}});
  for (auto _ : state) benchmark::DoNotOptimize(nu(w, s).value);
}
BENCHMARK(BM_NuTeraWindow);

void BM_FindGeo(benchmark::State& state) {
  const auto horizon = static_cast<u64>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_geo(SetSpec::example2(2, 4), 3, 2, 16, 16, horizon).has_value());
  }
}
BENCHMARK(BM_FindGeo)->Arg(1'000'000'000)->Arg(1'000'000'000'000)->Unit(benchmark::kMillisecond);

void BM_ProductsIn(benchmark::State& state) {
  const auto hi = static_cast<u64>(state.range(0));
  const auto sf = SetSpec::squarefree();
  for (auto _ : state) benchmark::DoNotOptimize(products_in(sf, sf, 1, hi).size());
}
BENCHMARK(BM_ProductsIn)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

void BM_GapWitness(benchmark::State& state) {
  const auto sf = SetSpec::squarefree();
  for (auto _ : state) {
    benchmark::DoNotOptimize(gap_witness(sf, sf, static_cast<u64>(state.range(0)), 1'000'000).has_value());
  }
}
BENCHMARK(BM_GapWitness)->Arg(4)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
