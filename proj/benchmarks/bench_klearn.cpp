#include <benchmark/benchmark.h>

#include "klearn/distribution.hpp"
#include "klearn/estimator.hpp"
#include "klearn/gadgets.hpp"
#include "klearn/generator.hpp"
#include "klearn/rng.hpp"

using namespace klearn;

namespace {

void BM_BuildPsi0(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_psi0(n, 4));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_BuildPsi0)->Arg(64)->Arg(256)->Arg(1024)->Complexity();

void BM_ClassifyPsi0Peak(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Formula psi0 = build_psi0(n, 4);
  const Assignment top = Assignment::all_true(static_cast<std::size_t>(n));
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify(psi0, top));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_ClassifyPsi0Peak)->Arg(64)->Arg(256)->Arg(1024)->Complexity();

void BM_EstimateMonotone(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Formula f = random_bounded_formula(n, 5, 3, n * 3 / 5, 17, true);
  const Assignment top = Assignment::all_true(static_cast<std::size_t>(n));
  const EstimatorConfig config{2.0, 1e-6};
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate(f, top, config));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_EstimateMonotone)->Arg(64)->Arg(256)->Arg(1024)->Complexity();

void BM_EnumerateGibbs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Formula psi0 = build_psi0(n, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_gibbs(psi0, 0.5));
  }
}
BENCHMARK(BM_EnumerateGibbs)->Arg(12)->Arg(16)->Arg(20);

void BM_MinFalse(benchmark::State& state) {
  const Formula psi0 = build_psi0(16, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_false(psi0));
  }
}
BENCHMARK(BM_MinFalse);

void BM_SampleRejection(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Formula f = random_bounded_formula(n, 5, 3, n * 3 / 5, 23, true);
  std::uint64_t draw = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sample_rejection(f, 0.5, derive_seed(99, draw++), 1000000));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_SampleRejection)->Arg(64)->Arg(256)->Arg(1024)->Complexity();

}  // namespace

BENCHMARK_MAIN();
