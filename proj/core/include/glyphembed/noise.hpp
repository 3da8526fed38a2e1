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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "glyphembed/rng.hpp"

namespace glyphembed {

// Synthetic perturbations. Only non-whitespace characters are eligible;
// whitespace is copied through unchanged, so token boundaries survive.
enum class NoiseKind { kDelete, kInsert, kReplace, kSwap, kAll };

std::string_view to_string(NoiseKind kind) noexcept;
std::optional<NoiseKind> parse_noise_kind(std::string_view name) noexcept;

struct NoiseSpec {
  NoiseKind kind = NoiseKind::kAll;
  double probability = 0.1;
  std::u32string alphabet;  // draw pool for insert/replace, deduplicated and sorted
  std::uint64_t seed = 0;

  // Throws InvalidArgument.
  void validate() const;
};

// Sorted, deduplicated alphabet from UTF-8 text; whitespace is dropped.
std::u32string make_alphabet(std::string_view utf8);

// Counters filled in by the operators when requested.
struct NoiseStats {
  std::size_t eligible = 0;  // Bernoulli trials performed
  std::size_t edits = 0;     // trials that fired
  // For kAll: edits by drawn kind (delete, insert, replace, swap).
  std::array<std::size_t, 4> by_kind{};
  std::size_t swap_fallbacks = 0;  // swap drawn at a word's last character

  NoiseStats& operator+=(const NoiseStats& other) noexcept;
};

bool is_noise_whitespace(char32_t c) noexcept;

std::string inject_delete(std::string_view text, double p, Rng& rng, NoiseStats* stats = nullptr);
// After each eligible character, with probability p, insert a uniform alphabet draw.
std::string inject_insert(std::string_view text, double p, std::u32string_view alphabet, Rng& rng,
                          NoiseStats* stats = nullptr);
// Replacement is uniform over alphabet minus the original character.
std::string inject_replace(std::string_view text, double p, std::u32string_view alphabet, Rng& rng,
                           NoiseStats* stats = nullptr);
// Left-to-right over adjacent eligible pairs; a swapped pair is skipped.
std::string inject_swap(std::string_view text, double p, Rng& rng, NoiseStats* stats = nullptr);
std::string inject_all(std::string_view text, double p, std::u32string_view alphabet, Rng& rng,
                       NoiseStats* stats = nullptr);

std::string apply_noise(std::string_view text, const NoiseSpec& spec, Rng& rng,
                        NoiseStats* stats = nullptr);

// Lowercase word -> nonempty list of distinct variants, none equal to the word.
struct MisspellingLexicon {
  std::map<std::string, std::vector<std::string>> entries;

  bool empty() const noexcept { return entries.empty(); }
  std::size_t size() const noexcept { return entries.size(); }
};

// "word<TAB>variant" lines; blank lines skipped. Throws FormatError, SelfMapping.
MisspellingLexicon parse_lexicon(std::string_view text, const std::string& source = "<lexicon>");
MisspellingLexicon load_lexicon(const std::filesystem::path& path);

struct NaturalNoiseResult {
  std::string text;
  std::size_t replaced = 0;
};

// Replaces every token whose lowercased core is in the lexicon with a uniform
// variant, keeping surrounding punctuation and first-letter capitalization.
NaturalNoiseResult inject_natural(std::string_view text, const MisspellingLexicon& lexicon, Rng& rng);

// One child seed per line index, so output is independent of scheduling.
std::vector<std::string> noise_corpus(const std::vector<std::string>& lines, const NoiseSpec& spec,
                                      NoiseStats* stats = nullptr);
std::vector<std::string> natural_noise_corpus(const std::vector<std::string>& lines,
                                              const MisspellingLexicon& lexicon, std::uint64_t seed,
                                              std::size_t* replaced = nullptr);

}  // namespace glyphembed
