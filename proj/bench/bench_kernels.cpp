// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "qlo/fock.hpp"
#include "qlo/growth.hpp"
#include "qlo/sampling.hpp"
#include "qlo/verify.hpp"

namespace {

using namespace qlo;

const GraphPtr& cycle5() {
  static const GraphPtr g = presets::cycle(5);
  return g;
}

const TruncatedRep& cycle5_rep() {
  static const TruncatedRep rep = build_rep(cycle5(), Rational(9));
  return rep;
}

void BM_GrowthCounts(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(growth_counts(*cycle5(), Rational(60)));
}
void BM_GrowthCountsSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(serial::growth_counts(*cycle5(), Rational(60)));
}

void BM_Enumerate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_up_to(cycle5(), Rational(8)));
}
void BM_EnumerateSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(serial::enumerate_up_to(cycle5(), Rational(8)));
}

void BM_DivisibilityMask(benchmark::State& state) {
  cycle5_rep();
  const Trace p = parse_trace(cycle5(), "ab");
  for (auto _ : state) benchmark::DoNotOptimize(divisibility_mask(cycle5_rep(), p));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cycle5_rep().dim()));
}
void BM_DivisibilityMaskSerial(benchmark::State& state) {
  cycle5_rep();
  const Trace p = parse_trace(cycle5(), "ab");
  for (auto _ : state) benchmark::DoNotOptimize(serial::divisibility_mask(cycle5_rep(), p));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cycle5_rep().dim()));
}

void BM_GibbsNumeric(benchmark::State& state) {
  const auto a = range_projection(cycle5_rep(), parse_trace(cycle5(), "a"));
  for (auto _ : state) benchmark::DoNotOptimize(gibbs_numeric(cycle5_rep(), a, 1.5));
}
void BM_GibbsNumericSerial(benchmark::State& state) {
  const auto a = range_projection(cycle5_rep(), parse_trace(cycle5(), "a"));
  for (auto _ : state) benchmark::DoNotOptimize(serial::gibbs_numeric(cycle5_rep(), a, 1.5));
}

void BM_KmsExhaustive(benchmark::State& state) {
  const auto traces = traces_up_to_length(cycle5(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(kms_exhaustive(traces));
}
void BM_KmsExhaustiveSerial(benchmark::State& state) {
  const auto traces = traces_up_to_length(cycle5(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(serial::kms_exhaustive(traces));
}

void BM_NicaExhaustive(benchmark::State& state) {
  const auto rep = build_rep(cycle5(), Rational(5));
  const auto traces = traces_up_to_length(cycle5(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(nica_exhaustive(rep, traces));
}
void BM_NicaExhaustiveSerial(benchmark::State& state) {
  const auto rep = build_rep(cycle5(), Rational(5));
  const auto traces = traces_up_to_length(cycle5(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(serial::nica_exhaustive(rep, traces));
}

}  // namespace

BENCHMARK(BM_GrowthCounts)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GrowthCountsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Enumerate)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DivisibilityMask)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DivisibilityMaskSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GibbsNumeric)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GibbsNumericSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KmsExhaustive)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KmsExhaustiveSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NicaExhaustive)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NicaExhaustiveSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
