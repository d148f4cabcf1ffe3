#include <benchmark/benchmark.h>

#include "maxdep/samplers.hpp"

using namespace maxdep;

namespace {

void run(benchmark::State& state, ExecPolicy policy) {
  const auto model = SequenceModel::archimedean_frailty(GeneratorFamily::Clayton, 2);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const std::uint64_t reps = 20000;
  for (auto _ : state) {
    auto m = native_maxima(model, n, reps, 1, policy);
    benchmark::DoNotOptimize(m.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * reps * n));
}

void BM_Serial(benchmark::State& state) { run(state, {ExecPolicy::Mode::Serial, 1}); }
void BM_OpenMP(benchmark::State& state) { run(state, {ExecPolicy::Mode::OpenMP, 0}); }

}  // namespace

BENCHMARK(BM_Serial)->Arg(16)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OpenMP)->Arg(16)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
