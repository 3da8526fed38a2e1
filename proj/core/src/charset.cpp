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

#include "glyphembed/charset.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

#include "glyphembed/error.hpp"
#include "glyphembed/text_format.hpp"

namespace glyphembed {

MissingGlyph::MissingGlyph(char32_t codepoint)
    : Error("font has no glyph for " + format_codepoint(codepoint)), codepoint_(codepoint) {}

UnknownChar::UnknownChar(char32_t codepoint)
    : Error("character " + format_codepoint(codepoint) + " is not in the charset") {}

bool is_scalar_value(char32_t c) noexcept {
  return c <= 0x10FFFF && !(c >= 0xD800 && c <= 0xDFFF);
}

CharSet::CharSet(std::vector<char32_t> codepoints) : codepoints_(std::move(codepoints)) {
  if (codepoints_.size() < 2) {
    throw InvalidArgument("charset needs at least 2 characters, got " +
                          std::to_string(codepoints_.size()));
  }
  for (std::size_t i = 0; i < codepoints_.size(); ++i) {
    if (!is_scalar_value(codepoints_[i])) {
      throw InvalidArgument("not a Unicode scalar value: " +
                            std::to_string(static_cast<std::uint32_t>(codepoints_[i])));
    }
    if (i > 0 && codepoints_[i - 1] >= codepoints_[i]) {
      throw InvalidArgument("charset must be strictly ascending; " +
                            format_codepoint(codepoints_[i]) + " follows " +
                            format_codepoint(codepoints_[i - 1]));
    }
  }
}

CharSet CharSet::from_unsorted(std::vector<char32_t> codepoints) {
  std::sort(codepoints.begin(), codepoints.end());
  codepoints.erase(std::unique(codepoints.begin(), codepoints.end()), codepoints.end());
  return CharSet(std::move(codepoints));
}

CharSet CharSet::from_utf8(std::string_view chars) {
  std::u32string decoded = decode_utf8(chars);
  return from_unsorted(std::vector<char32_t>(decoded.begin(), decoded.end()));
}

CharSet CharSet::printable_ascii() {
  std::vector<char32_t> cps;
  for (char32_t c = 0x20; c <= 0x7E; ++c) cps.push_back(c);
  return CharSet(std::move(cps));
}

CharSet CharSet::lowercase_latin() {
  std::vector<char32_t> cps;
  for (char32_t c = U'a'; c <= U'z'; ++c) cps.push_back(c);
  return CharSet(std::move(cps));
}

std::optional<std::size_t> CharSet::index_of(char32_t c) const noexcept {
  auto it = std::lower_bound(codepoints_.begin(), codepoints_.end(), c);
  if (it == codepoints_.end() || *it != c) return std::nullopt;
  return static_cast<std::size_t>(it - codepoints_.begin());
}

std::string format_codepoint(char32_t c) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(c));
  return buf;
}

std::optional<char32_t> parse_codepoint(std::string_view s) {
  if (s.size() < 3 || s.size() > 8 || (s[0] != 'U' && s[0] != 'u') || s[1] != '+') {
    return std::nullopt;
  }
  std::uint32_t value = 0;
  const char* first = s.data() + 2;
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value, 16);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  const auto c = static_cast<char32_t>(value);
  if (!is_scalar_value(c)) return std::nullopt;
  return c;
}

CharSet parse_charset(std::string_view text, const std::string& source) {
  std::vector<char32_t> cps;
  std::size_t line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto cp = parse_codepoint(line);
    if (!cp) throw FormatError(source, line_no, "expected U+XXXX, got '" + std::string(line) + "'");
    cps.push_back(*cp);
  }
  std::vector<char32_t> sorted = cps;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw FormatError(source, 0, "duplicate codepoint in charset");
  }
  if (sorted.size() < 2) throw FormatError(source, 0, "charset needs at least 2 characters");
  return CharSet(std::move(sorted));
}

CharSet load_charset(const std::filesystem::path& path) {
  return parse_charset(read_file(path), path.string());
}

std::string format_charset(const CharSet& charset) {
  std::string out;
  for (char32_t c : charset) {
    out += format_codepoint(c);
    out += '\n';
  }
  return out;
}

std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    int len = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
      len = 1;
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    }
    bool ok = len > 0 && i + len <= s.size();
    for (int k = 1; ok && k < len; ++k) {
      const auto b = static_cast<unsigned char>(s[i + k]);
      if ((b & 0xC0) != 0x80) {
        ok = false;
      } else {
        cp = (cp << 6) | (b & 0x3F);
      }
    }
    // Reject overlong forms and surrogates.
    static constexpr char32_t kMinForLen[] = {0, 0, 0x80, 0x800, 0x10000};
    if (ok && (cp < kMinForLen[len] || !is_scalar_value(cp))) ok = false;
    if (!ok) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

void append_utf8(std::string& out, char32_t c) {
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

std::string encode_utf8(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t c : s) append_utf8(out, c);
  return out;
}

}  // namespace glyphembed
