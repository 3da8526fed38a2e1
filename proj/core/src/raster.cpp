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

#include "glyphembed/raster.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>

#include "glyphembed/error.hpp"
#include "glyphembed/parallel.hpp"

namespace glyphembed {

namespace {

// Flattening tolerance for quadratic curves, in pixels.
constexpr double kFlatness = 0.002;
constexpr int kMaxCurveSteps = 128;

// Signed-area accumulation rasterizer. Every line adds its exact signed area
// contribution to the cells it crosses; a running sum then yields coverage.
class Accumulator {
 public:
  Accumulator(std::size_t width, std::size_t height)
      : width_(width), height_(height), cells_(width * height + 4, 0.0) {}

  void line(Point p0, Point p1) {
    if (p0.y == p1.y) return;
    double dir = 1.0;
    if (p0.y > p1.y) {
      std::swap(p0, p1);
      dir = -1.0;
    }
    const double w = static_cast<double>(width_);
    p0.x = std::clamp(p0.x, 0.0, w);
    p1.x = std::clamp(p1.x, 0.0, w);
    const double dxdy = (p1.x - p0.x) / (p1.y - p0.y);
    double x = p0.x;
    if (p0.y < 0) x -= p0.y * dxdy;
    const auto y_begin = static_cast<std::size_t>(std::max(0.0, std::floor(p0.y)));
    const auto y_end = static_cast<std::size_t>(
        std::min(static_cast<double>(height_), std::max(0.0, std::ceil(p1.y))));
    for (std::size_t y = y_begin; y < y_end; ++y) {
      const std::size_t line_start = y * width_;
      const double yf = static_cast<double>(y);
      const double dy = std::min(yf + 1.0, p1.y) - std::max(yf, p0.y);
      const double x_next = x + dxdy * dy;
      const double d = dy * dir;
      const double x0 = std::min(x, x_next);
      const double x1 = std::max(x, x_next);
      const double x0_floor = std::floor(x0);
      const auto x0i = static_cast<std::size_t>(x0_floor);
      const double x1_ceil = std::ceil(x1);
      const auto x1i = static_cast<std::size_t>(x1_ceil);
      if (x1i <= x0i + 1) {
        const double xmf = 0.5 * (x + x_next) - x0_floor;
        cells_[line_start + x0i] += d - d * xmf;
        cells_[line_start + x0i + 1] += d * xmf;
      } else {
        const double s = 1.0 / (x1 - x0);
        const double x0f = x0 - x0_floor;
        const double a0 = 0.5 * s * (1.0 - x0f) * (1.0 - x0f);
        const double x1f = x1 - x1_ceil + 1.0;
        const double am = 0.5 * s * x1f * x1f;
        cells_[line_start + x0i] += d * a0;
        if (x1i == x0i + 2) {
          cells_[line_start + x0i + 1] += d * (1.0 - a0 - am);
        } else {
          const double a1 = s * (1.5 - x0f);
          cells_[line_start + x0i + 1] += d * (a1 - a0);
          for (std::size_t xi = x0i + 2; xi + 1 < x1i; ++xi) cells_[line_start + xi] += d * s;
          const double a2 = a1 + static_cast<double>(x1i - x0i - 3) * s;
          cells_[line_start + x1i - 1] += d * (1.0 - a2 - am);
        }
        cells_[line_start + x1i] += d * am;
      }
      x = x_next;
    }
  }

  void quad(Point p0, Point c, Point p1) {
    const double ddx = p0.x - 2 * c.x + p1.x;
    const double ddy = p0.y - 2 * c.y + p1.y;
    const double dd = std::hypot(ddx, ddy);
    const int steps =
        std::clamp(static_cast<int>(std::ceil(std::sqrt(dd / (8 * kFlatness)))), 1, kMaxCurveSteps);
    Point prev = p0;
    for (int i = 1; i <= steps; ++i) {
      const double t = static_cast<double>(i) / steps;
      const double u = 1 - t;
      const Point next = i == steps ? p1
                                    : Point{u * u * p0.x + 2 * u * t * c.x + t * t * p1.x,
                                            u * u * p0.y + 2 * u * t * c.y + t * t * p1.y};
      line(prev, next);
      prev = next;
    }
  }

  std::vector<double> coverage() const {
    std::vector<double> out(width_ * height_);
    double acc = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      acc += cells_[i];
      out[i] = std::min(1.0, std::abs(acc));
      // Cancellation leaves dust of order 1e-16 in blank cells.
      if (out[i] < 1e-12) out[i] = 0.0;
    }
    return out;
  }

 private:
  std::size_t width_, height_;
  std::vector<double> cells_;
};

GlyphOutline outline_for(const FontSpec& spec, char32_t c, MissingGlyphPolicy policy) {
  const auto glyph = spec.font->glyph_index(c);
  if (glyph) return spec.font->outline(*glyph);
  if (policy == MissingGlyphPolicy::kThrow) throw MissingGlyph(c);
  std::clog << "warning: " << spec.font_name << " has no glyph for " << format_codepoint(c)
            << "; using .notdef\n";
  return spec.font->outline(TrueTypeFont::kNotdef);
}

}  // namespace

void FontSpec::validate() const {
  if (!font) throw InvalidArgument("font spec has no font");
  if (width < 4 || height < 4) {
    throw InvalidArgument("image dimensions must be at least 4x4, got " + std::to_string(width) +
                          "x" + std::to_string(height));
  }
  if (!(point_size > 0) || !std::isfinite(point_size)) {
    throw InvalidArgument("point size must be positive");
  }
}

std::shared_ptr<const TrueTypeFont> load_font(const std::filesystem::path& path) {
  return std::make_shared<const TrueTypeFont>(TrueTypeFont::load(path.string()));
}

double fit_point_size(const TrueTypeFont& font, const CharSet& charset, std::size_t width,
                      std::size_t height) {
  if (width < 4 || height < 4) throw InvalidArgument("image dimensions must be at least 4x4");
  const double w = static_cast<double>(width);
  const double h = static_cast<double>(height);
  const double above = kBaselineFraction * h - 1.0;
  const double below = (1.0 - kBaselineFraction) * h - 1.0;
  const double across = w - 2.0;
  const double upem = font.units_per_em();

  double scale = std::numeric_limits<double>::infinity();
  for (char32_t c : charset) {
    const auto glyph = font.glyph_index(c);
    const GlyphOutline o = font.outline(glyph.value_or(TrueTypeFont::kNotdef));
    if (o.bounds.empty) continue;
    if (o.bounds.y_max > 0) scale = std::min(scale, above / o.bounds.y_max);
    if (o.bounds.y_min < 0) scale = std::min(scale, below / -o.bounds.y_min);
    if (o.bounds.width() > 0) scale = std::min(scale, across / o.bounds.width());
  }
  if (!std::isfinite(scale) || scale <= 0) {
    throw DegenerateInput("no charset glyph has ink; cannot fit a point size");
  }
  return scale * upem;
}

FontSpec make_font_spec(std::shared_ptr<const TrueTypeFont> font, std::string font_name,
                        const CharSet& charset, std::size_t width, std::size_t height) {
  FontSpec spec;
  spec.point_size = fit_point_size(*font, charset, width, height);
  spec.font = std::move(font);
  spec.font_name = std::move(font_name);
  spec.width = width;
  spec.height = height;
  spec.validate();
  return spec;
}

std::vector<double> rasterize_segments(std::span<const OutlineSegment> segments,
                                       std::size_t width, std::size_t height) {
  Accumulator acc(width, height);
  for (const auto& s : segments) {
    if (s.curved) acc.quad(s.from, s.ctrl, s.to);
    else acc.line(s.from, s.to);
  }
  return acc.coverage();
}

GlyphImage rasterize_char(char32_t c, const FontSpec& spec, MissingGlyphPolicy policy) {
  spec.validate();
  GlyphImage image{spec.width, spec.height, std::vector<double>(spec.width * spec.height, 0.0)};
  const GlyphOutline outline = outline_for(spec, c, policy);
  if (outline.blank()) return image;

  const double scale = spec.point_size / spec.font->units_per_em();
  const double center = 0.5 * (outline.bounds.x_min + outline.bounds.x_max);
  const double origin_x = 0.5 * static_cast<double>(spec.width);
  const double baseline = kBaselineFraction * static_cast<double>(spec.height);
  auto to_pixels = [&](Point p) { return Point{(p.x - center) * scale + origin_x, baseline - p.y * scale}; };

  std::vector<OutlineSegment> mapped;
  mapped.reserve(outline.segments.size());
  for (const auto& s : outline.segments) {
    mapped.push_back({to_pixels(s.from), to_pixels(s.ctrl), to_pixels(s.to), s.curved});
  }
  image.pixels = rasterize_segments(mapped, spec.width, spec.height);
  return image;
}

RasterMatrix build_raster_matrix(const CharSet& charset, const FontSpec& spec,
                                 MissingGlyphPolicy policy) {
  spec.validate();
  RasterMatrix matrix{charset, spec.width * spec.height, {}};
  matrix.data.assign(charset.size() * matrix.cols, 0.0);
  parallel_for(charset.size(), [&](std::size_t i) {
    const GlyphImage image = rasterize_char(charset[i], spec, policy);
    std::copy(image.pixels.begin(), image.pixels.end(),
              matrix.data.begin() + static_cast<std::ptrdiff_t>(i * matrix.cols));
  });
  return matrix;
}

std::string to_pgm(const GlyphImage& image) {
  std::string out = "P2\n" + std::to_string(image.width) + " " + std::to_string(image.height) +
                    "\n255\n";
  for (std::size_t r = 0; r < image.height; ++r) {
    for (std::size_t c = 0; c < image.width; ++c) {
      if (c) out += ' ';
      out += std::to_string(static_cast<int>(std::lround(255.0 * image.at(r, c))));
    }
    out += '\n';
  }
  return out;
}

}  // namespace glyphembed
