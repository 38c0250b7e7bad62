// Copyright 2026 The kcbs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "kcbs/stats.h"

namespace {

void BM_PvalueTail(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(kcbs::log_binomial_tail(4603450, 3912769, 0.841286));
  }
}
BENCHMARK(BM_PvalueTail)->Unit(benchmark::kMillisecond);

void BM_BentkusBound(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(kcbs::bentkus_deviation_bound(9207101, 0.005, 2));
  }
}
BENCHMARK(BM_BentkusBound)->Unit(benchmark::kMillisecond);

void BM_TailBySize(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kcbs::log_binomial_tail(n, n * 85 / 100, 0.8));
  }
}
BENCHMARK(BM_TailBySize)->RangeMultiplier(10)->Range(100, 10'000'000)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
