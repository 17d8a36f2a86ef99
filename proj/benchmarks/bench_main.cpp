#include <benchmark/benchmark.h>

#include <random>

#include "qsynth/anf.hpp"
#include "qsynth/circuit.hpp"
#include "qsynth/generators.hpp"
#include "qsynth/lin_solver.hpp"
#include "qsynth/nl_solver.hpp"
#include "qsynth/pattern_bank.hpp"

using namespace qsynth;

namespace {

const PatternBank& bank(int n) {
  static const PatternBank banks[] = {make_bank(5, true), make_bank(6, true)};
  return banks[n - 5];
}

void BM_LutToAnf(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::vector<std::uint32_t> values(std::size_t{1} << n);
  for (auto& v : values) v = static_cast<std::uint32_t>(rng() & ((1u << n) - 1));
  const Lut lut(n, n, values);
  for (auto _ : state) benchmark::DoNotOptimize(lut_to_anf(lut));
}
BENCHMARK(BM_LutToAnf)->DenseRange(4, 9);

void BM_BuildSetOp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_set_op(n));
}
BENCHMARK(BM_BuildSetOp)->DenseRange(4, 8)->Unit(benchmark::kMillisecond);

void BM_BuildMapXor(benchmark::State& state) {
  const SetOp set_op = build_set_op(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_map_xor(set_op));
}
BENCHMARK(BM_BuildMapXor)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

void solve_bench(benchmark::State& state, const Lut& lut) {
  const TruncatedAnf tanf = truncate(lut);
  const PatternBank& b = bank(lut.n());
  for (auto _ : state) benchmark::DoNotOptimize(solve_nonlinear(tanf, b));
}

void BM_SolveChi5(benchmark::State& state) { solve_bench(state, gen_chi(5)); }
BENCHMARK(BM_SolveChi5)->Unit(benchmark::kMillisecond);

void BM_SolveCube5(benchmark::State& state) { solve_bench(state, gen_power_map(5, 3, 0x25)); }
BENCHMARK(BM_SolveCube5)->Unit(benchmark::kMillisecond);

void BM_SolveCube6(benchmark::State& state) { solve_bench(state, gen_power_map(6, 3, 0x57)); }
BENCHMARK(BM_SolveCube6)->Unit(benchmark::kMillisecond);

void BM_SolveLinear(benchmark::State& state) {
  const TruncatedAnf tanf = truncate(gen_power_map(6, 3, 0x57));
  const NlResult nl = solve_nonlinear(tanf, bank(6));
  const LinRequirements reqs = derive_linear_requirements(nl.solutions.front(), tanf);
  for (auto _ : state) benchmark::DoNotOptimize(solve_linear(reqs));
}
BENCHMARK(BM_SolveLinear)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
