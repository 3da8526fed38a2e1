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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace glyphembed {

struct Point {
  double x = 0;
  double y = 0;
};

// A straight segment when `curved` is false (ctrl unused), otherwise a quadratic Bezier.
struct OutlineSegment {
  Point from;
  Point ctrl;
  Point to;
  bool curved = false;
};

struct BoundingBox {
  double x_min = 0, y_min = 0, x_max = 0, y_max = 0;
  bool empty = true;

  void add(Point p) noexcept;
  double width() const noexcept { return empty ? 0 : x_max - x_min; }
};

// Glyph outline in font units, y pointing up. Contours are closed.
struct GlyphOutline {
  std::vector<OutlineSegment> segments;
  BoundingBox bounds;  // of all on- and off-curve points

  bool blank() const noexcept { return segments.empty(); }
};

// Minimal reader for TrueType ('glyf' outline) fonts: cmap formats 4 and 12,
// simple and composite glyphs. No hinting, no CFF.
class TrueTypeFont {
 public:
  // Throws FormatError on malformed or unsupported data.
  explicit TrueTypeFont(std::vector<std::uint8_t> data, std::string source = "<font>");

  static TrueTypeFont load(const std::string& path);

  int units_per_em() const noexcept { return units_per_em_; }
  int glyph_count() const noexcept { return num_glyphs_; }
  const std::string& source() const noexcept { return source_; }
  std::span<const std::uint8_t> data() const noexcept { return data_; }

  // nullopt when the font maps the codepoint to no glyph (or to .notdef).
  std::optional<std::uint16_t> glyph_index(char32_t codepoint) const;
  GlyphOutline outline(std::uint16_t glyph) const;

  static constexpr std::uint16_t kNotdef = 0;

 private:
  struct Table {
    std::uint32_t offset = 0;
    std::uint32_t length = 0;
  };

  std::uint8_t u8(std::size_t off) const;
  std::uint16_t u16(std::size_t off) const;
  std::int16_t i16(std::size_t off) const { return static_cast<std::int16_t>(u16(off)); }
  std::uint32_t u32(std::size_t off) const;
  Table find_table(const char* tag, bool required) const;
  std::pair<std::size_t, std::size_t> glyph_range(std::uint16_t glyph) const;
  void append_outline(std::uint16_t glyph, const double (&xform)[6], int depth,
                      GlyphOutline& out) const;
  void append_simple(std::size_t off, std::size_t end, int contours, const double (&xform)[6],
                     GlyphOutline& out) const;
  void append_composite(std::size_t off, std::size_t end, const double (&xform)[6], int depth,
                        GlyphOutline& out) const;
  [[noreturn]] void fail(const std::string& what) const;

  std::vector<std::uint8_t> data_;
  std::string source_;
  Table glyf_, loca_;
  std::size_t cmap_subtable_ = 0;
  int cmap_format_ = 0;
  int units_per_em_ = 0;
  int num_glyphs_ = 0;
  bool long_loca_ = false;
};

}  // namespace glyphembed
