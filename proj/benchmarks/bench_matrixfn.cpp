/*
 * Copyright 2026 The clickgbs Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include "clickgbs/gaussian.hpp"
#include "clickgbs/matrixfn.hpp"

using namespace clickgbs;

namespace {

RealSymMatrix kernel_for(std::size_t modes) { return kernel_O(random_instance({modes, 1.0, 0.0, 1.0, 17})); }

ClickPattern binary_rung(std::size_t modes, std::size_t clicks) {
  std::vector<int> k(modes, 0);
  for (std::size_t i = 0; i < clicks; ++i) k[i] = 1;
  return ClickPattern(k);
}

}  // namespace

static void BM_Hafnian(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RealSymMatrix a = kernel_for(n);
  for (auto _ : state) benchmark::DoNotOptimize(hafnian(a));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Hafnian)->DenseRange(2, 7);

static void BM_Torontonian(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const RealSymMatrix a = kernel_for(m);
  for (auto _ : state) benchmark::DoNotOptimize(torontonian(a));
  state.counters["determinants"] = static_cast<double>(std::size_t{1} << m);
}
BENCHMARK(BM_Torontonian)->DenseRange(2, 12, 2);

// Collision-free ladder: F = 2^n determinants.
static void BM_KensingtonianBinary(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RealSymMatrix a = kernel_for(12);
  const ClickPattern k = binary_rung(12, n);
  for (auto _ : state) benchmark::DoNotOptimize(kensingtonian(a, k, 4));
  state.counters["F"] = static_cast<double>(std::size_t{1} << n);
}
BENCHMARK(BM_KensingtonianBinary)->DenseRange(1, 12);

// All clicks on a few modes: F = (N+1)^M.
static void BM_KensingtonianSaturated(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const RealSymMatrix a = kernel_for(3);
  const ClickPattern k{n, n, n};
  for (auto _ : state) benchmark::DoNotOptimize(kensingtonian(a, k, n));
  state.counters["F"] = static_cast<double>((n + 1) * (n + 1) * (n + 1));
}
BENCHMARK(BM_KensingtonianSaturated)->DenseRange(1, 8);

static void BM_LoopKensingtonian(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GaussianState st = random_instance({8, 1.0, 0.5, 1.0, 23});
  const RealSymMatrix a = kernel_O(st);
  const ClickPattern k = binary_rung(8, n);
  for (auto _ : state) benchmark::DoNotOptimize(loop_kensingtonian(a, st.mean(), k, 4));
}
BENCHMARK(BM_LoopKensingtonian)->DenseRange(2, 8, 2);
