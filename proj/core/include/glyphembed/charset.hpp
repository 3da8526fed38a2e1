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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace glyphembed {

// Ordered set of Unicode scalar values: strictly ascending, at least two entries.
class CharSet {
 public:
  // Validates the invariant; throws InvalidArgument.
  explicit CharSet(std::vector<char32_t> codepoints);

  // Sorts and deduplicates first, then validates.
  static CharSet from_unsorted(std::vector<char32_t> codepoints);
  static CharSet from_utf8(std::string_view chars);
  static CharSet printable_ascii();
  static CharSet lowercase_latin();

  std::size_t size() const noexcept { return codepoints_.size(); }
  char32_t operator[](std::size_t i) const { return codepoints_[i]; }
  std::span<const char32_t> codepoints() const noexcept { return codepoints_; }
  auto begin() const noexcept { return codepoints_.begin(); }
  auto end() const noexcept { return codepoints_.end(); }

  std::optional<std::size_t> index_of(char32_t c) const noexcept;
  bool contains(char32_t c) const noexcept { return index_of(c).has_value(); }

  friend bool operator==(const CharSet&, const CharSet&) = default;

 private:
  std::vector<char32_t> codepoints_;
};

// "U+XXXX" lines, '#' comments, blank lines ignored.
CharSet parse_charset(std::string_view text, const std::string& source = "<charset>");
CharSet load_charset(const std::filesystem::path& path);
std::string format_charset(const CharSet& charset);

bool is_scalar_value(char32_t c) noexcept;

// "U+0041" style; at least four hex digits, uppercase.
std::string format_codepoint(char32_t c);
// Accepts "U+XXXX" (1-6 hex digits). Returns nullopt on malformed input.
std::optional<char32_t> parse_codepoint(std::string_view s);

// Invalid sequences decode to U+FFFD, one per offending byte.
std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(std::u32string_view s);
void append_utf8(std::string& out, char32_t c);

}  // namespace glyphembed
