#include <benchmark/benchmark.h>

#include <omp.h>

#include "z4codes/correlation_kernels.hpp"

using namespace z4codes;

namespace {

const FamilySet& mfd2() {
  static const FamilySet f = build_family(FamilyKind::MFD2);
  return f;
}

void single_pair(benchmark::State& state, int which) {
  const auto a = mfd2().quaternary[3].symbols;
  const auto b = mfd2().quaternary[200].symbols;
  std::vector<GaussInt> out(a.size());
  for (auto _ : state) {
    if (which == 0) kernels::correlate_reference(a, b, CorrelationKind::even, out);
    if (which == 1) kernels::correlate_exact(a, b, CorrelationKind::even, out);
    if (which == 2) kernels::correlate_accelerated(a, b, CorrelationKind::even, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_PairReference(benchmark::State& s) { single_pair(s, 0); }
void BM_PairExact(benchmark::State& s) { single_pair(s, 1); }
void BM_PairAccelerated(benchmark::State& s) { single_pair(s, 2); }

// All unordered pairs of the first range(0) MFD2 codes, even and odd, with range(1) threads.
void bulk(benchmark::State& state, kernels::Mode mode) {
  FamilySet sub;
  sub.kind = FamilyKind::MFD2;
  sub.quaternary.assign(mfd2().quaternary.begin(), mfd2().quaternary.begin() + state.range(0));
  const CorrelationKind kinds[] = {CorrelationKind::even, CorrelationKind::odd};
  kernels::BulkOptions opt;
  opt.threads = static_cast<int>(state.range(1));
  for (auto _ : state) {
    std::int64_t acc = 0;
    kernels::bulk_correlate(sub, kinds, mode, [&](const kernels::PairCorrelation& p) { acc += p.values[1].re; }, opt);
    benchmark::DoNotOptimize(acc);
  }
  const auto n = state.range(0);
  state.counters["pairs"] = static_cast<double>(n * (n + 1) / 2);
}

void BM_BulkExact(benchmark::State& s) { bulk(s, kernels::Mode::exact); }
void BM_BulkAccelerated(benchmark::State& s) { bulk(s, kernels::Mode::accelerated); }

void bulk_args(benchmark::internal::Benchmark* b) {
  const int maxt = omp_get_max_threads();
  for (int t = 1; t <= maxt; t *= 2) b->Args({32, t});
  if ((maxt & (maxt - 1)) != 0) b->Args({32, maxt});
}

}  // namespace

BENCHMARK(BM_PairReference)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PairExact)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PairAccelerated)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BulkExact)->Apply(bulk_args)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BulkAccelerated)->Apply(bulk_args)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
