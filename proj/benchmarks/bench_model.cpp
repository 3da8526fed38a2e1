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

#include "glyphembed/model.hpp"
#include "glyphembed/rng.hpp"
#include "glyphembed/synthgen.hpp"

namespace {

using namespace glyphembed;

std::vector<EncodedExample> batch_of(const InputEncoding& enc, std::size_t n) {
  const Vocabulary vocab = generate_vocab(VocabSpec{});
  return encode_dataset(enc, generate_mixed_test(vocab, n, 0.1, 3));
}

void BM_Forward(benchmark::State& state) {
  const InputEncoding enc = InputEncoding::one_hot(CharSet::printable_ascii());
  const ClassifierModel m = ClassifierModel::initialized(ClassifierConfig{}, enc.width());
  const auto data = batch_of(enc, 1);
  for (auto _ : state) benchmark::DoNotOptimize(forward(m, enc, data[0].indices));
}
BENCHMARK(BM_Forward);

void BM_BackwardBatch(benchmark::State& state) {
  const InputEncoding enc = InputEncoding::one_hot(CharSet::printable_ascii());
  const ClassifierModel m = ClassifierModel::initialized(ClassifierConfig{}, enc.width());
  const auto data = batch_of(enc, 64);
  for (auto _ : state) benchmark::DoNotOptimize(backward(m, enc, data));
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_BackwardBatch)->Unit(benchmark::kMicrosecond);

void BM_TrainEpoch(benchmark::State& state) {
  const InputEncoding enc = InputEncoding::one_hot(CharSet::printable_ascii());
  const Vocabulary vocab = generate_vocab(VocabSpec{});
  const auto train_set = generate_split(vocab, 2000, 1);
  const auto val_set = generate_split(vocab, 200, 2);
  ClassifierConfig c;
  c.epochs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(train(c, enc, train_set, val_set));
  state.SetItemsProcessed(state.iterations() * 2000);
}
BENCHMARK(BM_TrainEpoch)->Unit(benchmark::kMillisecond);

}  // namespace
