// Copyright 2026 The fermigauss Authors
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

#include <benchmark/benchmark.h>

#include <random>

#include "fermigauss/convex.hpp"
#include "fermigauss/extension_sdp.hpp"
#include "fermigauss/flo.hpp"

namespace fg = fermigauss;

namespace {

fg::RealMatrix random_antisymmetric(int dim, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  fg::RealMatrix a = fg::RealMatrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      a(i, j) = normal(gen);
      a(j, i) = -a(i, j);
    }
  }
  return a;
}

void BM_Pfaffian(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const fg::AntisymmetricMatrix a(random_antisymmetric(dim, 1));
  for (auto _ : state) benchmark::DoNotOptimize(fg::pfaffian(a));
  state.SetComplexityN(dim);
}
BENCHMARK(BM_Pfaffian)->RangeMultiplier(2)->Range(8, 512)->Complexity();

void BM_WickOrder(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const fg::CorrelationMatrix m =
      fg::random_pure_gaussian(fg::ModeCount(16, 16), 2).correlation();
  std::uint32_t mask = 0;
  for (int i = 0; i < order; ++i) mask |= 1u << (2 * i + 1);
  const fg::CorrelatorIndex idx(mask);
  for (auto _ : state) benchmark::DoNotOptimize(fg::wick_expectation(m, idx));
}
BENCHMARK(BM_WickOrder)->DenseRange(2, 16, 2);

void BM_MeasureMode(benchmark::State& state) {
  const int modes = static_cast<int>(state.range(0));
  const fg::CorrelationMatrix m =
      fg::random_pure_gaussian(fg::ModeCount(modes, modes), 3).correlation();
  for (auto _ : state) {
    const int outcome = fg::empty_probability(m, 1) > 0.5 ? 0 : 1;
    benchmark::DoNotOptimize(fg::measure_mode(m, 1, outcome));
  }
}
BENCHMARK(BM_MeasureMode)->RangeMultiplier(2)->Range(4, 16);

void BM_DecomposeA8(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fg::decompose_a8(0.9));
}
BENCHMARK(BM_DecomposeA8)->Unit(benchmark::kMillisecond);

void BM_BuildExtensionSdp(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const fg::DensityOperator rho =
      m == 4 ? fg::depolarized_a8(0.3) : fg::random_even_state(fg::ModeCount(m), 4);
  for (auto _ : state) benchmark::DoNotOptimize(fg::build_extension_sdp(rho));
}
BENCHMARK(BM_BuildExtensionSdp)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_SolveExtensionSdp(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const fg::DensityOperator rho = fg::random_even_state(fg::ModeCount(m), 5);
  const fg::SdpInstance inst = fg::build_extension_sdp(rho);
  for (auto _ : state) benchmark::DoNotOptimize(fg::solve_feasibility(inst, rho));
}
BENCHMARK(BM_SolveExtensionSdp)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
