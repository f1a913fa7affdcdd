#include <benchmark/benchmark.h>

#include "clarklab/cauchy.hpp"
#include "clarklab/families.hpp"
#include "clarklab/perturbation.hpp"
#include "clarklab/potentials.hpp"

using namespace clarklab;

static void BM_FindExpAtoms(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(exp_example_numeric(state.range(0)));
  }
}
BENCHMARK(BM_FindExpAtoms)->Arg(25)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_TolsaScan(benchmark::State& state) {
  const CauchySection s(exp_example_section(static_cast<std::size_t>(state.range(0))).measure);
  for (auto _ : state) benchmark::DoNotOptimize(tolsa_scan(s));
}
BENCHMARK(BM_TolsaScan)->RangeMultiplier(2)->Range(128, 1024)->Unit(benchmark::kMillisecond);

static void BM_SectionNorm(benchmark::State& state) {
  const CauchySection s(exp_example_section(static_cast<std::size_t>(state.range(0))).measure);
  for (auto _ : state) benchmark::DoNotOptimize(section_norm(s));
}
BENCHMARK(BM_SectionNorm)->RangeMultiplier(2)->Range(128, 1024)->Unit(benchmark::kMillisecond);

static void BM_AtomSumCriterion(benchmark::State& state) {
  const AtomicMeasure mu = squared_measure(exp_example_symmetric(state.range(0)).measure);
  for (auto _ : state) benchmark::DoNotOptimize(lemma61_criterion(mu));
}
BENCHMARK(BM_AtomSumCriterion)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
