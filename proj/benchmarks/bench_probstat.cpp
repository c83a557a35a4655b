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

#include "clickgbs/probstat.hpp"

using namespace clickgbs;

static void BM_FullDistribution(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const GaussianState st = random_instance({m, 1.0, 0.0, 1.0, 5});
  for (auto _ : state) benchmark::DoNotOptimize(full_distribution(st, {n, 1.0, 0.0}));
}
BENCHMARK(BM_FullDistribution)->Args({2, 2})->Args({2, 4})->Args({3, 2})->Args({3, 4});

static void BM_ExpansionOracle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GaussianState st = random_instance({2, 1.0, 0.0, 1.0, 5});
  const ClickPattern k{n / 2, n / 2};
  for (auto _ : state) benchmark::DoNotOptimize(expansion_oracle_prob(st, k, n));
}
BENCHMARK(BM_ExpansionOracle)->DenseRange(2, 6, 2);

static void BM_SampleChain(benchmark::State& state) {
  const GaussianState st = random_instance({3, 1.0, 0.0, 1.0, 5});
  for (auto _ : state) benchmark::DoNotOptimize(sample_chain(st, {2, 1.0, 0.0}, 1000, 1));
}
BENCHMARK(BM_SampleChain);

static void BM_ConvergenceGap(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(povm_convergence_gap(1.0, n));
}
BENCHMARK(BM_ConvergenceGap)->RangeMultiplier(2)->Range(1, 64);
