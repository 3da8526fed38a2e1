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

#include "glyphembed/raster.hpp"

namespace {

using namespace glyphembed;

const FontSpec& serif_spec() {
  static const FontSpec spec = make_font_spec(load_font(GLYPHEMBED_BENCH_FONT_DIR "/DejaVuSerif.ttf"), "DejaVuSerif",
                                              CharSet::printable_ascii());
  return spec;
}

void BM_RasterizeChar(benchmark::State& state) {
  const FontSpec& spec = serif_spec();
  for (auto _ : state) benchmark::DoNotOptimize(rasterize_char(U'g', spec));
}
BENCHMARK(BM_RasterizeChar);

void BM_RasterMatrixAscii(benchmark::State& state) {
  const FontSpec& spec = serif_spec();
  const CharSet cs = CharSet::printable_ascii();
  for (auto _ : state) benchmark::DoNotOptimize(build_raster_matrix(cs, spec));
}
BENCHMARK(BM_RasterMatrixAscii)->Unit(benchmark::kMillisecond);

void BM_FontLoad(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(load_font(GLYPHEMBED_BENCH_FONT_DIR "/DejaVuSans.ttf"));
}
BENCHMARK(BM_FontLoad)->Unit(benchmark::kMillisecond);

}  // namespace
