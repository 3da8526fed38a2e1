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

#include "glyphembed/noise.hpp"

#include <algorithm>
#include <cmath>

#include "glyphembed/charset.hpp"
#include "glyphembed/error.hpp"
#include "glyphembed/parallel.hpp"
#include "glyphembed/text_format.hpp"

namespace glyphembed {

namespace {

enum EditKind : std::size_t { kEditDelete = 0, kEditInsert = 1, kEditReplace = 2, kEditSwap = 3 };

void check_probability(double p) {
  if (!(p >= 0 && p <= 1)) throw InvalidArgument("noise probability must lie in [0, 1]");
}

void check_alphabet(std::u32string_view alphabet, std::size_t min_size) {
  if (alphabet.size() < min_size) {
    throw InvalidArgument("noise alphabet needs at least " + std::to_string(min_size) +
                          " character(s)");
  }
}

char32_t draw(std::u32string_view alphabet, Rng& rng) {
  return alphabet[rng.below(alphabet.size())];
}

// Uniform over alphabet \ {c}; alphabet must hold some character other than c.
char32_t draw_other(char32_t c, std::u32string_view alphabet, Rng& rng) {
  const auto pos = alphabet.find(c);
  if (pos == std::u32string_view::npos) return draw(alphabet, rng);
  std::size_t k = rng.below(alphabet.size() - 1);
  if (k >= pos) ++k;
  return alphabet[k];
}

void count(NoiseStats* stats, bool fired) {
  if (!stats) return;
  ++stats->eligible;
  if (fired) ++stats->edits;
}

char32_t ascii_lower(char32_t c) { return (c >= U'A' && c <= U'Z') ? c + 32 : c; }
char32_t ascii_upper(char32_t c) { return (c >= U'a' && c <= U'z') ? c - 32 : c; }
bool is_upper(char32_t c) { return c >= U'A' && c <= U'Z'; }

bool is_punct(char32_t c) {
  return c < 0x80 && c > 0x20 && c != 0x7F && !(c >= U'0' && c <= U'9') &&
         !(c >= U'a' && c <= U'z') && !(c >= U'A' && c <= U'Z');
}

std::u32string lower(std::u32string_view s) {
  std::u32string out(s);
  for (char32_t& c : out) c = ascii_lower(c);
  return out;
}

}  // namespace

std::string_view to_string(NoiseKind kind) noexcept {
  switch (kind) {
    case NoiseKind::kDelete: return "delete";
    case NoiseKind::kInsert: return "insert";
    case NoiseKind::kReplace: return "replace";
    case NoiseKind::kSwap: return "swap";
    case NoiseKind::kAll: return "all";
  }
  return "?";
}

std::optional<NoiseKind> parse_noise_kind(std::string_view name) noexcept {
  for (NoiseKind k : {NoiseKind::kDelete, NoiseKind::kInsert, NoiseKind::kReplace,
                      NoiseKind::kSwap, NoiseKind::kAll}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

void NoiseSpec::validate() const {
  check_probability(probability);
  if (kind == NoiseKind::kInsert) check_alphabet(alphabet, 1);
  if (kind == NoiseKind::kReplace || kind == NoiseKind::kAll) check_alphabet(alphabet, 2);
}

std::u32string make_alphabet(std::string_view utf8) {
  std::u32string chars = decode_utf8(utf8);
  std::erase_if(chars, is_noise_whitespace);
  std::sort(chars.begin(), chars.end());
  chars.erase(std::unique(chars.begin(), chars.end()), chars.end());
  return chars;
}

NoiseStats& NoiseStats::operator+=(const NoiseStats& other) noexcept {
  eligible += other.eligible;
  edits += other.edits;
  for (std::size_t k = 0; k < by_kind.size(); ++k) by_kind[k] += other.by_kind[k];
  swap_fallbacks += other.swap_fallbacks;
  return *this;
}

bool is_noise_whitespace(char32_t c) noexcept {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\v' || c == U'\f';
}

std::string inject_delete(std::string_view text, double p, Rng& rng, NoiseStats* stats) {
  check_probability(p);
  std::string out;
  for (char32_t c : decode_utf8(text)) {
    if (is_noise_whitespace(c)) {
      append_utf8(out, c);
      continue;
    }
    const bool fire = rng.bernoulli(p);
    count(stats, fire);
    if (!fire) append_utf8(out, c);
  }
  return out;
}

std::string inject_insert(std::string_view text, double p, std::u32string_view alphabet, Rng& rng,
                          NoiseStats* stats) {
  check_probability(p);
  check_alphabet(alphabet, 1);
  std::string out;
  for (char32_t c : decode_utf8(text)) {
    append_utf8(out, c);
    if (is_noise_whitespace(c)) continue;
    const bool fire = rng.bernoulli(p);
    count(stats, fire);
    if (fire) append_utf8(out, draw(alphabet, rng));
  }
  return out;
}

std::string inject_replace(std::string_view text, double p, std::u32string_view alphabet, Rng& rng,
                           NoiseStats* stats) {
  check_probability(p);
  check_alphabet(alphabet, 2);
  std::string out;
  for (char32_t c : decode_utf8(text)) {
    if (is_noise_whitespace(c)) {
      append_utf8(out, c);
      continue;
    }
    const bool fire = rng.bernoulli(p);
    count(stats, fire);
    append_utf8(out, fire ? draw_other(c, alphabet, rng) : c);
  }
  return out;
}

std::string inject_swap(std::string_view text, double p, Rng& rng, NoiseStats* stats) {
  check_probability(p);
  std::u32string s = decode_utf8(text);
  for (std::size_t i = 0; i + 1 < s.size();) {
    if (is_noise_whitespace(s[i]) || is_noise_whitespace(s[i + 1])) {
      ++i;
      continue;
    }
    const bool fire = rng.bernoulli(p);
    count(stats, fire);
    if (fire) {
      std::swap(s[i], s[i + 1]);
      i += 2;
    } else {
      ++i;
    }
  }
  return encode_utf8(s);
}

std::string inject_all(std::string_view text, double p, std::u32string_view alphabet, Rng& rng,
                       NoiseStats* stats) {
  check_probability(p);
  check_alphabet(alphabet, 2);
  const std::u32string s = decode_utf8(text);
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char32_t c = s[i];
    if (is_noise_whitespace(c)) {
      append_utf8(out, c);
      continue;
    }
    const bool fire = rng.bernoulli(p);
    count(stats, fire);
    if (!fire) {
      append_utf8(out, c);
      continue;
    }
    const auto kind = static_cast<EditKind>(rng.below(4));
    if (stats) ++stats->by_kind[kind];
    switch (kind) {
      case kEditDelete:
        break;
      case kEditInsert:
        append_utf8(out, c);
        append_utf8(out, draw(alphabet, rng));
        break;
      case kEditReplace:
        append_utf8(out, draw_other(c, alphabet, rng));
        break;
      case kEditSwap:
        if (i + 1 < s.size() && !is_noise_whitespace(s[i + 1])) {
          append_utf8(out, s[i + 1]);
          append_utf8(out, c);
          ++i;  // the partner is consumed by the swap
        } else {
          if (stats) ++stats->swap_fallbacks;
          append_utf8(out, draw_other(c, alphabet, rng));
        }
        break;
    }
  }
  return out;
}

std::string apply_noise(std::string_view text, const NoiseSpec& spec, Rng& rng, NoiseStats* stats) {
  spec.validate();
  switch (spec.kind) {
    case NoiseKind::kDelete: return inject_delete(text, spec.probability, rng, stats);
    case NoiseKind::kInsert: return inject_insert(text, spec.probability, spec.alphabet, rng, stats);
    case NoiseKind::kReplace: return inject_replace(text, spec.probability, spec.alphabet, rng, stats);
    case NoiseKind::kSwap: return inject_swap(text, spec.probability, rng, stats);
    case NoiseKind::kAll: return inject_all(text, spec.probability, spec.alphabet, rng, stats);
  }
  throw InvalidArgument("unknown noise kind");
}

MisspellingLexicon parse_lexicon(std::string_view text, const std::string& source) {
  MisspellingLexicon lex;
  std::size_t line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 2) {
      throw FormatError(source, line_no, "expected 'word<TAB>variant'");
    }
    const std::string word = encode_utf8(lower(decode_utf8(trim(fields[0]))));
    const std::string variant(trim(fields[1]));
    if (word.empty() || variant.empty()) throw FormatError(source, line_no, "empty word or variant");
    if (word.find(' ') != std::string::npos || variant.find(' ') != std::string::npos) {
      throw FormatError(source, line_no, "words and variants must not contain spaces");
    }
    if (encode_utf8(lower(decode_utf8(variant))) == word) throw SelfMapping(source, line_no, word);
    auto& variants = lex.entries[word];
    if (std::find(variants.begin(), variants.end(), variant) == variants.end()) {
      variants.push_back(variant);
    }
  }
  return lex;
}

MisspellingLexicon load_lexicon(const std::filesystem::path& path) {
  return parse_lexicon(read_file(path), path.string());
}

NaturalNoiseResult inject_natural(std::string_view text, const MisspellingLexicon& lexicon,
                                  Rng& rng) {
  NaturalNoiseResult result;
  const std::u32string s = decode_utf8(text);
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (is_noise_whitespace(s[i])) {
      out.push_back(s[i++]);
      continue;
    }
    std::size_t end = i;
    while (end < s.size() && !is_noise_whitespace(s[end])) ++end;
    std::size_t core_begin = i;
    std::size_t core_end = end;
    while (core_begin < core_end && is_punct(s[core_begin])) ++core_begin;
    while (core_end > core_begin && is_punct(s[core_end - 1])) --core_end;

    out.append(s, i, core_begin - i);
    const std::u32string_view core(s.data() + core_begin, core_end - core_begin);
    bool replaced = false;
    if (!core.empty() && !lexicon.empty()) {
      auto it = lexicon.entries.find(encode_utf8(lower(core)));
      if (it != lexicon.entries.end()) {
        const auto& variants = it->second;
        std::u32string variant = decode_utf8(variants[rng.below(variants.size())]);
        if (is_upper(core.front()) && !variant.empty()) variant.front() = ascii_upper(variant.front());
        out += variant;
        ++result.replaced;
        replaced = true;
      }
    }
    if (!replaced) out += core;
    out.append(s, core_end, end - core_end);
    i = end;
  }
  result.text = encode_utf8(out);
  return result;
}

std::vector<std::string> noise_corpus(const std::vector<std::string>& lines, const NoiseSpec& spec,
                                      NoiseStats* stats) {
  spec.validate();
  std::vector<std::string> out(lines.size());
  std::vector<NoiseStats> per_line(stats ? lines.size() : 0);
  parallel_for(lines.size(), [&](std::size_t i) {
    Rng rng(child_seed(spec.seed, i));
    out[i] = apply_noise(lines[i], spec, rng, stats ? &per_line[i] : nullptr);
  });
  if (stats) {
    for (const auto& s : per_line) *stats += s;
  }
  return out;
}

std::vector<std::string> natural_noise_corpus(const std::vector<std::string>& lines,
                                              const MisspellingLexicon& lexicon, std::uint64_t seed,
                                              std::size_t* replaced) {
  std::vector<NaturalNoiseResult> results(lines.size());
  parallel_for(lines.size(), [&](std::size_t i) {
    Rng rng(child_seed(seed, i));
    results[i] = inject_natural(lines[i], lexicon, rng);
  });
  std::vector<std::string> out;
  out.reserve(lines.size());
  std::size_t total = 0;
  for (auto& r : results) {
    total += r.replaced;
    out.push_back(std::move(r.text));
  }
  if (replaced) *replaced = total;
  return out;
}

}  // namespace glyphembed
