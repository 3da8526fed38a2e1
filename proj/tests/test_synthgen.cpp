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

#include <gtest/gtest.h>

#include <filesystem>
#include <set>

#include "glyphembed/error.hpp"
#include "glyphembed/synthgen.hpp"
#include "glyphembed/text_format.hpp"

namespace glyphembed {
namespace {

Vocabulary default_vocab(std::uint64_t seed = 0) {
  VocabSpec spec;
  spec.seed = seed;
  return generate_vocab(spec);
}

TEST(Vocab, DefaultShape) {
  const Vocabulary v = default_vocab();
  ASSERT_EQ(v.positive.size(), 15u);
  ASSERT_EQ(v.negative.size(), 15u);
  std::set<std::string> all;
  for (const auto& w : v.words()) {
    EXPECT_EQ(w.size(), 3u);
    for (char c : w) EXPECT_TRUE(c >= 'a' && c <= 'z');
    all.insert(w);
  }
  EXPECT_EQ(all.size(), 30u);
  EXPECT_EQ(generate_vocab(VocabSpec{}).words(), v.words());
  EXPECT_NE(default_vocab(1).words(), v.words());
}

TEST(Vocab, OnlyPartition) {
  VocabSpec spec;
  spec.word_length = 1;
  spec.words_per_class = 1;
  spec.alphabet = CharSet::from_utf8("ab");
  const Vocabulary v = generate_vocab(spec);
  std::set<std::string> got = {v.positive[0], v.negative[0]};
  EXPECT_EQ(got, (std::set<std::string>{"a", "b"}));
  spec.words_per_class = 2;
  EXPECT_THROW(generate_vocab(spec), InvalidArgument);
}

TEST(Synth, MajorityLabel) {
  Vocabulary v;
  v.positive = {"aaa", "bbb"};
  v.negative = {"ccc", "ddd"};
  EXPECT_EQ(majority_label(v, "aaa bbb aaa"), Label::kPositive);
  EXPECT_EQ(majority_label(v, "ccc ddd aaa"), Label::kNegative);
  EXPECT_FALSE(majority_label(v, "aaa ccc xyz").has_value());
}

TEST(Synth, CleanSplit) {
  const Vocabulary v = default_vocab();
  const auto split_ = generate_split(v, 100000, 7);
  ASSERT_EQ(split_.size(), 100000u);
  std::size_t positives = 0;
  for (const auto& s : split_) {
    ASSERT_EQ(s.text.size(), 11u);
    ASSERT_EQ(majority_label(v, s.text), s.label);
    positives += s.label == Label::kPositive;
  }
  EXPECT_NEAR(static_cast<double>(positives) / 100000.0, 0.5, 0.02);
  EXPECT_EQ(generate_split(v, 50, 7), std::vector<LabeledSentence>(split_.begin(), split_.begin() + 50));
}

TEST(Synth, MixedTest) {
  const Vocabulary v = default_vocab();
  EXPECT_EQ(generate_mixed_test(v, 200, 0.0, 3), generate_split(v, 200, 3));
  const auto mixed = generate_mixed_test(v, 100000, 0.1, 3);
  const auto clean = generate_split(v, 100000, 3);
  double inserted = 0;
  for (std::size_t i = 0; i < mixed.size(); ++i) {
    EXPECT_EQ(mixed[i].label, clean[i].label);
    inserted += static_cast<double>(mixed[i].text.size() - clean[i].text.size());
  }
  const double mean = inserted / 100000.0;
  EXPECT_NEAR(mean, 0.9, 0.9 * 0.05);
  EXPECT_THROW(generate_mixed_test(v, 1, 1.5, 0), InvalidArgument);
}

TEST(Synth, ReplacedTest) {
  const Vocabulary v = default_vocab();
  const auto replaced = generate_replaced_test(v, 20000, 5);
  for (const auto& s : replaced) {
    const auto words = split(s.text, ' ');
    ASSERT_EQ(words.size(), 3u);
    std::size_t outside = 0;
    for (auto w : words) {
      const auto p = v.polarity(w);
      if (!p) {
        ++outside;
        EXPECT_EQ(w.size(), 3u);
      } else {
        EXPECT_EQ(*p, s.label) << s.text;
      }
    }
    EXPECT_EQ(outside, 1u) << s.text;
    EXPECT_EQ(majority_label(v, s.text), s.label);
  }
}

TEST(Synth, ReplacedTakesMinorityWord) {
  const Vocabulary v = default_vocab();
  const auto clean = generate_split(v, 2000, 9);
  const auto replaced = generate_replaced_test(v, 2000, 9);
  for (std::size_t i = 0; i < clean.size(); ++i) {
    const auto cw = split(clean[i].text, ' ');
    const auto rw = split(replaced[i].text, ' ');
    EXPECT_EQ(clean[i].label, replaced[i].label);
    const bool unanimous = v.polarity(cw[0]) == v.polarity(cw[1]) && v.polarity(cw[1]) == v.polarity(cw[2]);
    std::size_t mismatches = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      if (cw[k] == rw[k]) continue;
      ++mismatches;
      if (!unanimous) EXPECT_NE(v.polarity(cw[k]), clean[i].label) << clean[i].text;
    }
    EXPECT_EQ(mismatches, 1u);
  }
}

TEST(Synth, Dataset) {
  DatasetConfig cfg;
  cfg.train = 300;
  cfg.val = 100;
  cfg.test = 50;
  cfg.seed = 4;
  const auto ds = generate_dataset(cfg);
  EXPECT_EQ(ds.train.size(), 300u);
  EXPECT_EQ(ds.val.size(), 100u);
  EXPECT_EQ(ds.test_clean.size(), 50u);
  EXPECT_EQ(ds.test_mixed.size(), 50u);
  EXPECT_EQ(ds.test_replaced.size(), 50u);
  EXPECT_EQ(generate_dataset(cfg).train, ds.train);
  EXPECT_NE(ds.train, std::vector<LabeledSentence>(ds.val.begin(), ds.val.end()));

  const auto dir = std::filesystem::temp_directory_path() / "glyphembed_synth_ds";
  std::filesystem::remove_all(dir);
  write_dataset(ds, dir);
  for (const char* name : kSplitNames) EXPECT_TRUE(std::filesystem::exists(dir / (std::string(name) + ".jsonl")));
  EXPECT_EQ(load_jsonl(dir / "test_mixed.jsonl"), ds.test_mixed);
  std::filesystem::remove_all(dir);
}

TEST(Jsonl, RoundTripAndErrors) {
  const std::vector<LabeledSentence> s = {{"abc def ghi", Label::kPositive}, {"quote \" and ü", Label::kNegative}};
  const std::string text = format_jsonl(s, "train");
  EXPECT_EQ(split_lines(text)[0], R"({"text":"abc def ghi","label":1,"split":"train"})");
  EXPECT_EQ(parse_jsonl(text), s);
  EXPECT_THROW(parse_jsonl("{\"text\": \"a\", \"label\": 2}\n"), FormatError);
  EXPECT_THROW(parse_jsonl("{\"label\": 1}\n"), FormatError);
  try {
    parse_jsonl(text + "not json\n", "d.jsonl");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("d.jsonl:3"), std::string::npos) << e.what();
  }
}

}  // namespace
}  // namespace glyphembed
