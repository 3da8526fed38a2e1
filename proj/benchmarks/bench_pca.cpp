// Copyright 2026 The glyphembed Authors
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

#include <vector>

#include "glyphembed/pca.hpp"
#include "glyphembed/rng.hpp"

namespace {

using namespace glyphembed;

std::vector<double> random_data(std::size_t rows, std::size_t cols) {
  Rng rng(1);
  std::vector<double> v(rows * cols);
  for (double& x : v) x = rng.uniform(0, 1);
  return v;
}

// 95 glyphs of 15x15 pixels, the default embedding build.
void BM_FitPca(benchmark::State& state) {
  const auto cols = static_cast<std::size_t>(state.range(0));
  const auto data = random_data(95, cols);
  const auto solver = state.range(1) ? PcaSolver::kGram : PcaSolver::kCovariance;
  for (auto _ : state) benchmark::DoNotOptimize(fit_pca(data, 95, cols, solver));
}
BENCHMARK(BM_FitPca)->Args({225, 0})->Args({225, 1})->Args({1024, 1})->Unit(benchmark::kMillisecond);

void BM_Jacobi(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto a = random_data(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) a[i * n + j] = a[j * n + i];
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_eigen(a, n));
}
BENCHMARK(BM_Jacobi)->Arg(32)->Arg(95)->Arg(225)->Unit(benchmark::kMillisecond);

}  // namespace
