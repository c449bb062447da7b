// Parallel kernels against their serial references. Pass --benchmark_filter
// to pick one; worker counts above the core count only add overhead.

#include <benchmark/benchmark.h>

#include "orbitzeta/enumerate.hpp"
#include "orbitzeta/potential.hpp"

using namespace orbitzeta;

namespace {

const SchottkyGroup& ref() {
  static const SchottkyGroup g = reference_group();
  return g;
}

void BM_EnumerateParallel(benchmark::State& st) {
  ResourceLimits lim;
  lim.workers = static_cast<int>(st.range(1));
  const double T = static_cast<double>(st.range(0));
  std::size_t n = 0;
  for (auto _ : st) n = enumerate_spectrum(ref(), T, lim).entries.size();
  st.counters["classes"] = static_cast<double>(n);
}

void BM_EnumerateSerial(benchmark::State& st) {
  const double T = static_cast<double>(st.range(0));
  const int L = validate_ping_pong(ref()).required_word_length(T);
  std::size_t n = 0;
  for (auto _ : st) n = reference::enumerate_spectrum_serial(ref(), T, L).entries.size();
  st.counters["classes"] = static_cast<double>(n);
}

void BM_OrbitParallel(benchmark::State& st) {
  ResourceLimits lim;
  lim.workers = static_cast<int>(st.range(1));
  const double R = static_cast<double>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(orbit_displacements(ref(), R, lim).displacements.size());
}

void BM_OrbitSerial(benchmark::State& st) {
  const double R = static_cast<double>(st.range(0));
  const int L = validate_ping_pong(ref()).required_word_length(R);
  for (auto _ : st) benchmark::DoNotOptimize(reference::orbit_displacements_serial(ref(), R, L).displacements.size());
}

const LengthSpectrum& spectrum30() {
  static const LengthSpectrum sp = enumerate_spectrum(ref(), 30.0);
  return sp;
}

void BM_WeightsParallel(benchmark::State& st) {
  PotentialSpec p = parse_potential("1/(1 + x^2 + y^2)");
  const int workers = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(compute_weights(spectrum30(), p, &ref(), {}, workers).values.data());
}

void BM_WeightsSerial(benchmark::State& st) {
  PotentialSpec p = parse_potential("1/(1 + x^2 + y^2)");
  for (auto _ : st) benchmark::DoNotOptimize(reference::compute_weights_serial(spectrum30(), p, &ref()).values.data());
}

}  // namespace

BENCHMARK(BM_EnumerateParallel)->ArgsProduct({{20, 30}, {1, 2, 4}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateSerial)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OrbitParallel)->ArgsProduct({{24, 30}, {1, 2, 4}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OrbitSerial)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WeightsParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WeightsSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
