// Copyright 2026 The matchmarket Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "benchmark/benchmark.h"
#include "matchmarket/assignment.h"
#include "matchmarket/bvn.h"
#include "matchmarket/generators.h"
#include "matchmarket/linear_program.h"
#include "matchmarket/nash.h"
#include "matchmarket/polytopes.h"

namespace matchmarket {
namespace {

Instance RandomInstance(int n, std::uint64_t seed, bool two_sided = false) {
  return Generate({.family = Family::kRandom, .n = n, .seed = seed, .two_sided = two_sided});
}

RationalMatrix RandomDoublyStochastic(std::size_t n, int terms, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RationalMatrix x(n, n);
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  for (int t = 0; t < terms; ++t) {
    std::shuffle(p.begin(), p.end(), rng);
    for (std::size_t i = 0; i < n; ++i) x(i, p[i]) += Rational(1, terms);
  }
  return x;
}

void BM_ExactAssignmentLp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = RandomInstance(n, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(OptimizeOverPolytope(inst, Polytope::kPerfectMatching, inst.u));
  }
}
BENCHMARK(BM_ExactAssignmentLp)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_HungarianRational(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = RandomInstance(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(MaxWeightPerfectMatching(inst.u));
}
BENCHMARK(BM_HungarianRational)->Arg(10)->Arg(50)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_HungarianDouble(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DoubleMatrix w = ToDouble(RandomInstance(n, 3).u);
  for (auto _ : state) benchmark::DoNotOptimize(MaxWeightPerfectMatching(w));
}
BENCHMARK(BM_HungarianDouble)->Arg(10)->Arg(100)->Arg(300)->Unit(benchmark::kMicrosecond);

void BM_SolveNash(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = RandomInstance(n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(SolveNash(inst));
}
BENCHMARK(BM_SolveNash)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_IcExperiment(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(RunIcExperiment(n));
}
BENCHMARK(BM_IcExperiment)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Birkhoff(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RationalMatrix x = RandomDoublyStochastic(n, static_cast<int>(n * n / 2), 5);
  for (auto _ : state) benchmark::DoNotOptimize(DecomposeBirkhoff(x));
}
BENCHMARK(BM_Birkhoff)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_EnvyFreePolytope(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const bool two_sided = state.range(1) != 0;
  const Instance inst = RandomInstance(n, 6, two_sided);
  const RationalMatrix objective = RandomInstance(n, 7).u;
  for (auto _ : state) {
    benchmark::DoNotOptimize(OptimizeOverPolytope(inst, Polytope::kEnvyFree, objective));
  }
}
BENCHMARK(BM_EnvyFreePolytope)
    ->Args({4, 0})
    ->Args({6, 0})
    ->Args({4, 1})
    ->Args({6, 1})
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace matchmarket

BENCHMARK_MAIN();
