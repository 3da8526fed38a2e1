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
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "glyphembed/charset.hpp"
#include "glyphembed/truetype.hpp"

namespace glyphembed {

// Font plus canvas geometry. `point_size` is in pixels per em.
struct FontSpec {
  std::shared_ptr<const TrueTypeFont> font;
  std::string font_name;
  double point_size = 0;
  std::size_t width = 15;   // m, columns
  std::size_t height = 15;  // n, rows

  // Throws InvalidArgument when the invariants (m, n >= 4, point_size > 0, font set) fail.
  void validate() const;
};

// Loads a font file; the font name defaults to the file stem.
std::shared_ptr<const TrueTypeFont> load_font(const std::filesystem::path& path);

// Fraction of the canvas height above the baseline.
inline constexpr double kBaselineFraction = 0.75;

// Largest pixels-per-em at which every glyph of `charset` fits the m x n canvas
// with a one-pixel margin, given the fixed baseline.
double fit_point_size(const TrueTypeFont& font, const CharSet& charset, std::size_t width,
                      std::size_t height);

// Convenience: a spec whose point size is fitted to `charset`.
FontSpec make_font_spec(std::shared_ptr<const TrueTypeFont> font, std::string font_name,
                        const CharSet& charset, std::size_t width = 15, std::size_t height = 15);

enum class MissingGlyphPolicy { kNotdef, kThrow };

// Row-major coverage raster, values in [0, 1].
struct GlyphImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> pixels;

  double at(std::size_t row, std::size_t col) const { return pixels[row * width + col]; }

  friend bool operator==(const GlyphImage&, const GlyphImage&) = default;
};

GlyphImage rasterize_char(char32_t c, const FontSpec& spec,
                          MissingGlyphPolicy policy = MissingGlyphPolicy::kNotdef);

// |charset| x (m*n) matrix; row i is the flattened glyph of charset[i].
struct RasterMatrix {
  CharSet charset;
  std::size_t cols = 0;
  std::vector<double> data;  // row-major

  std::size_t rows() const noexcept { return charset.size(); }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data).subspan(i * cols, cols);
  }
};

RasterMatrix build_raster_matrix(const CharSet& charset, const FontSpec& spec,
                                 MissingGlyphPolicy policy = MissingGlyphPolicy::kNotdef);

// Plain PGM ("P2"), pixel = round(255 * value).
std::string to_pgm(const GlyphImage& image);

// Exact-area coverage rasterization of closed outlines given in pixel
// coordinates (x right, y down). Nonzero fill; overlapping ink saturates at 1.
std::vector<double> rasterize_segments(std::span<const OutlineSegment> segments,
                                       std::size_t width, std::size_t height);

}  // namespace glyphembed
