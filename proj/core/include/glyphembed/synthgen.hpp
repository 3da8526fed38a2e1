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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "glyphembed/charset.hpp"

namespace glyphembed {

// Binary polarity of the synthetic task. The numeric value is the on-disk label.
enum class Label : int { kNegative = 0, kPositive = 1 };

struct VocabSpec {
  std::size_t word_length = 3;
  std::size_t words_per_class = 15;
  CharSet alphabet = CharSet::lowercase_latin();
  std::uint64_t seed = 0;

  // Throws InvalidArgument, including when 2 * words_per_class exceeds |alphabet|^word_length.
  void validate() const;
};

struct Vocabulary {
  std::vector<std::string> positive;
  std::vector<std::string> negative;
  CharSet alphabet = CharSet::lowercase_latin();
  std::size_t word_length = 3;

  std::optional<Label> polarity(std::string_view word) const;
  bool contains(std::string_view word) const { return polarity(word).has_value(); }
  std::size_t size() const noexcept { return positive.size() + negative.size(); }
  // Positive words first, in generation order.
  std::vector<std::string> words() const;
};

struct LabeledSentence {
  std::string text;
  Label label = Label::kNegative;

  friend bool operator==(const LabeledSentence&, const LabeledSentence&) = default;
};

Vocabulary generate_vocab(const VocabSpec& spec);

// Majority polarity of the in-vocabulary words; nullopt when there is a tie.
std::optional<Label> majority_label(const Vocabulary& vocab, std::string_view sentence);

// Sentence i draws from an Rng seeded with child_seed(seed, i).
std::vector<LabeledSentence> generate_split(const Vocabulary& vocab, std::size_t count,
                                            std::uint64_t seed);
std::vector<LabeledSentence> generate_mixed_test(const Vocabulary& vocab, std::size_t count,
                                                 double mix_rate, std::uint64_t seed);
std::vector<LabeledSentence> generate_replaced_test(const Vocabulary& vocab, std::size_t count,
                                                    std::uint64_t seed);

inline constexpr double kDefaultMixRate = 0.1;

struct DatasetConfig {
  VocabSpec vocab;  // vocab.seed is overwritten from `seed` by generate_dataset
  std::size_t train = 18000;
  std::size_t val = 6000;
  std::size_t test = 6000;  // per test condition
  double mix_rate = kDefaultMixRate;
  std::uint64_t seed = 0;
};

struct SyntheticDataset {
  DatasetConfig config;
  Vocabulary vocab;
  std::vector<LabeledSentence> train, val, test_clean, test_mixed, test_replaced;
};

// Split seeds are stage_seed(config.seed, "<split name>").
SyntheticDataset generate_dataset(DatasetConfig config);

inline constexpr const char* kSplitNames[] = {"train", "val", "test_clean", "test_mixed",
                                              "test_replaced"};

// JSON Lines: {"text": ..., "label": 0|1, "split": ...}
std::string format_jsonl(const std::vector<LabeledSentence>& sentences, std::string_view split);
std::vector<LabeledSentence> parse_jsonl(std::string_view text, const std::string& source = "<jsonl>");
std::vector<LabeledSentence> load_jsonl(const std::filesystem::path& path);

// Writes <split>.jsonl for every split plus vocab.tsv and manifest.json.
void write_dataset(const SyntheticDataset& dataset, const std::filesystem::path& dir);

}  // namespace glyphembed
