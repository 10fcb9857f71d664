#include <benchmark/benchmark.h>

#include "sstpca/lowdeg.hpp"
#include "sstpca/model.hpp"
#include "sstpca/recovery.hpp"
#include "sstpca/tensor.hpp"

using namespace sstpca;

// Args: n, p, t, workers.
static void BM_ArgmaxOverUt(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const auto p = static_cast<std::uint32_t>(state.range(1));
  const auto t = static_cast<std::uint32_t>(state.range(2));
  const auto workers = static_cast<unsigned>(state.range(3));
  const auto y = sample_noise_tensor(n, p, 1);
  std::uint64_t candidates = 0;
  for (auto _ : state) {
    const auto result = argmax_over_Ut(y, t, {}, workers);
    candidates = result.candidates;
    benchmark::DoNotOptimize(result.value);
  }
  state.counters["candidates/s"] =
      benchmark::Counter(static_cast<double>(candidates), benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_ArgmaxOverUt)
    ->Args({60, 3, 1, 1})
    ->Args({30, 3, 2, 1})
    ->Args({30, 3, 2, 4})
    ->Args({20, 4, 2, 4})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

// Contraction of all but the last mode, as used to read off a support.
static void BM_ContractLeaveOne(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const auto t = static_cast<std::uint32_t>(state.range(1));
  const auto y = sample_noise_tensor(n, 3, 2);
  std::vector<std::uint32_t> support;
  for (std::uint32_t i = 1; i <= t; ++i) support.push_back(i);
  const auto v = make_flat_signal(n, support, std::vector<int>(t, 1)).factor();
  for (auto _ : state) benchmark::DoNotOptimize(contract_leave_one(y, v));
}
BENCHMARK(BM_ContractLeaveOne)->Args({60, 1})->Args({60, 4})->Args({120, 4});

static void BM_DegreeTerm(benchmark::State& state) {
  const auto d = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(degree_term(200, 10, 3, d));
}
BENCHMARK(BM_DegreeTerm)->Arg(4)->Arg(10)->Arg(20);

static void BM_ChiSquared(benchmark::State& state) {
  LowDegParams q;
  q.n = 200;
  q.k = 10;
  q.p = 3;
  q.D = static_cast<std::uint32_t>(state.range(0));
  q.lambda = 5.0;
  const auto mode = state.range(1) == 0 ? Arithmetic::exact_rational : Arithmetic::log_float;
  for (auto _ : state) benchmark::DoNotOptimize(chi_squared_exact(q, mode).total);
}
BENCHMARK(BM_ChiSquared)->Args({10, 0})->Args({10, 1})->Args({40, 1})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
