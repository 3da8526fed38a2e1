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

#include "glyphembed/synthgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include <json.hpp>

#include "glyphembed/error.hpp"
#include "glyphembed/parallel.hpp"
#include "glyphembed/rng.hpp"
#include "glyphembed/text_format.hpp"

namespace glyphembed {

namespace {

constexpr std::size_t kWordsPerSentence = 3;

std::string random_word(const CharSet& alphabet, std::size_t length, Rng& rng) {
  std::string w;
  for (std::size_t i = 0; i < length; ++i) append_utf8(w, alphabet[rng.below(alphabet.size())]);
  return w;
}

struct Draw {
  std::array<std::size_t, kWordsPerSentence> word;  // index into vocab.words()
};

std::string join(const std::vector<std::string>& words, const Draw& d) {
  std::string s = words[d.word[0]];
  for (std::size_t k = 1; k < kWordsPerSentence; ++k) s += ' ' + words[d.word[k]];
  return s;
}

Draw draw_sentence(std::size_t vocab_size, Rng& rng) {
  Draw d;
  for (auto& w : d.word) w = rng.below(vocab_size);
  return d;
}

Label label_of(const Draw& d, std::size_t positives) {
  std::size_t pos = 0;
  for (auto w : d.word) pos += w < positives;
  return pos * 2 > kWordsPerSentence ? Label::kPositive : Label::kNegative;
}

}  // namespace

void VocabSpec::validate() const {
  if (word_length < 1) throw InvalidArgument("word length must be at least 1");
  if (words_per_class < 1) throw InvalidArgument("words per class must be at least 1");
  const double space = std::pow(static_cast<double>(alphabet.size()), static_cast<double>(word_length));
  if (2.0 * static_cast<double>(words_per_class) > space) {
    throw InvalidArgument("alphabet too small for the requested number of distinct words");
  }
}

std::optional<Label> Vocabulary::polarity(std::string_view word) const {
  if (std::find(positive.begin(), positive.end(), word) != positive.end()) return Label::kPositive;
  if (std::find(negative.begin(), negative.end(), word) != negative.end()) return Label::kNegative;
  return std::nullopt;
}

std::vector<std::string> Vocabulary::words() const {
  std::vector<std::string> all = positive;
  all.insert(all.end(), negative.begin(), negative.end());
  return all;
}

Vocabulary generate_vocab(const VocabSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  std::set<std::string> seen;
  std::vector<std::string> drawn;
  while (drawn.size() < 2 * spec.words_per_class) {
    std::string w = random_word(spec.alphabet, spec.word_length, rng);
    if (seen.insert(w).second) drawn.push_back(std::move(w));
  }
  Vocabulary v;
  v.alphabet = spec.alphabet;
  v.word_length = spec.word_length;
  v.positive.assign(drawn.begin(), drawn.begin() + static_cast<std::ptrdiff_t>(spec.words_per_class));
  v.negative.assign(drawn.begin() + static_cast<std::ptrdiff_t>(spec.words_per_class), drawn.end());
  return v;
}

std::optional<Label> majority_label(const Vocabulary& vocab, std::string_view sentence) {
  int balance = 0;
  for (std::string_view w : split(sentence, ' ')) {
    if (auto p = vocab.polarity(w)) balance += *p == Label::kPositive ? 1 : -1;
  }
  if (balance == 0) return std::nullopt;
  return balance > 0 ? Label::kPositive : Label::kNegative;
}

std::vector<LabeledSentence> generate_split(const Vocabulary& vocab, std::size_t count,
                                            std::uint64_t seed) {
  const auto words = vocab.words();
  std::vector<LabeledSentence> out(count);
  parallel_for(count, [&](std::size_t i) {
    Rng rng(child_seed(seed, i));
    const Draw d = draw_sentence(words.size(), rng);
    out[i] = {join(words, d), label_of(d, vocab.positive.size())};
  });
  return out;
}

std::vector<LabeledSentence> generate_mixed_test(const Vocabulary& vocab, std::size_t count,
                                                 double mix_rate, std::uint64_t seed) {
  if (!(mix_rate >= 0 && mix_rate <= 1)) throw InvalidArgument("mix rate must lie in [0, 1]");
  const auto words = vocab.words();
  std::vector<LabeledSentence> out(count);
  parallel_for(count, [&](std::size_t i) {
    Rng rng(child_seed(seed, i));
    const Draw d = draw_sentence(words.size(), rng);
    const std::string clean = join(words, d);
    std::string mixed;
    for (char32_t c : decode_utf8(clean)) {
      append_utf8(mixed, c);
      if (c == U' ') continue;
      if (rng.bernoulli(mix_rate)) append_utf8(mixed, vocab.alphabet[rng.below(vocab.alphabet.size())]);
    }
    out[i] = {std::move(mixed), label_of(d, vocab.positive.size())};
  });
  return out;
}

std::vector<LabeledSentence> generate_replaced_test(const Vocabulary& vocab, std::size_t count,
                                                    std::uint64_t seed) {
  const auto words = vocab.words();
  const std::size_t positives = vocab.positive.size();
  std::vector<LabeledSentence> out(count);
  parallel_for(count, [&](std::size_t i) {
    Rng rng(child_seed(seed, i));
    const Draw d = draw_sentence(words.size(), rng);
    const Label label = label_of(d, positives);
    std::size_t victim = 0;
    std::size_t minority = 0, minority_count = 0;
    for (std::size_t k = 0; k < kWordsPerSentence; ++k) {
      const bool is_pos = d.word[k] < positives;
      if (is_pos != (label == Label::kPositive)) {
        minority = k;
        ++minority_count;
      }
    }
    victim = minority_count == 0 ? rng.below(kWordsPerSentence) : minority;
    std::string replacement;
    do {
      replacement = random_word(vocab.alphabet, vocab.word_length, rng);
    } while (vocab.contains(replacement));

    std::string text;
    for (std::size_t k = 0; k < kWordsPerSentence; ++k) {
      if (k) text += ' ';
      text += k == victim ? replacement : words[d.word[k]];
    }
    out[i] = {std::move(text), label};
  });
  return out;
}

SyntheticDataset generate_dataset(DatasetConfig config) {
  config.vocab.seed = stage_seed(config.seed, "vocab");
  SyntheticDataset ds;
  ds.vocab = generate_vocab(config.vocab);
  ds.train = generate_split(ds.vocab, config.train, stage_seed(config.seed, "train"));
  ds.val = generate_split(ds.vocab, config.val, stage_seed(config.seed, "val"));
  ds.test_clean = generate_split(ds.vocab, config.test, stage_seed(config.seed, "test_clean"));
  ds.test_mixed = generate_mixed_test(ds.vocab, config.test, config.mix_rate,
                                      stage_seed(config.seed, "test_mixed"));
  ds.test_replaced =
      generate_replaced_test(ds.vocab, config.test, stage_seed(config.seed, "test_replaced"));
  ds.config = std::move(config);
  return ds;
}

std::string format_jsonl(const std::vector<LabeledSentence>& sentences, std::string_view split) {
  std::string out;
  for (const auto& s : sentences) {
    nlohmann::ordered_json j;
    j["text"] = s.text;
    j["label"] = static_cast<int>(s.label);
    j["split"] = split;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<LabeledSentence> parse_jsonl(std::string_view text, const std::string& source) {
  std::vector<LabeledSentence> out;
  std::size_t line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw FormatError(source, line_no, "invalid JSON object");
    if (!j.contains("text") || !j["text"].is_string()) {
      throw FormatError(source, line_no, "missing string field 'text'");
    }
    if (!j.contains("label") || !j["label"].is_number_integer()) {
      throw FormatError(source, line_no, "missing integer field 'label'");
    }
    const int label = j["label"].get<int>();
    if (label != 0 && label != 1) throw FormatError(source, line_no, "label must be 0 or 1");
    out.push_back({j["text"].get<std::string>(), static_cast<Label>(label)});
  }
  return out;
}

std::vector<LabeledSentence> load_jsonl(const std::filesystem::path& path) {
  return parse_jsonl(read_file(path), path.string());
}

void write_dataset(const SyntheticDataset& ds, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::vector<LabeledSentence>* splits[] = {&ds.train, &ds.val, &ds.test_clean,
                                                  &ds.test_mixed, &ds.test_replaced};
  for (std::size_t i = 0; i < std::size(kSplitNames); ++i) {
    write_file(dir / (std::string(kSplitNames[i]) + ".jsonl"), format_jsonl(*splits[i], kSplitNames[i]));
  }
  std::string vocab = "word\tlabel\n";
  for (const auto& w : ds.vocab.positive) vocab += w + "\t1\n";
  for (const auto& w : ds.vocab.negative) vocab += w + "\t0\n";
  write_file(dir / "vocab.tsv", vocab);

  nlohmann::ordered_json m;
  m["seed"] = ds.config.seed;
  m["vocab_seed"] = ds.config.vocab.seed;
  m["word_length"] = ds.config.vocab.word_length;
  m["words_per_class"] = ds.config.vocab.words_per_class;
  m["alphabet"] = encode_utf8(std::u32string(ds.config.vocab.alphabet.begin(), ds.config.vocab.alphabet.end()));
  m["mix_rate"] = ds.config.mix_rate;
  m["counts"] = {{"train", ds.train.size()},
                 {"val", ds.val.size()},
                 {"test_clean", ds.test_clean.size()},
                 {"test_mixed", ds.test_mixed.size()},
                 {"test_replaced", ds.test_replaced.size()}};
  write_file(dir / "manifest.json", m.dump(2) + "\n");
}

}  // namespace glyphembed
