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

#include "glyphembed/truetype.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>

#include "glyphembed/error.hpp"

namespace glyphembed {

namespace {

constexpr int kMaxCompositeDepth = 8;

// glyf simple-glyph flags
constexpr std::uint8_t kOnCurve = 0x01;
constexpr std::uint8_t kXShort = 0x02;
constexpr std::uint8_t kYShort = 0x04;
constexpr std::uint8_t kRepeat = 0x08;
constexpr std::uint8_t kXSameOrPositive = 0x10;
constexpr std::uint8_t kYSameOrPositive = 0x20;

// glyf composite flags
constexpr std::uint16_t kArgsAreWords = 0x0001;
constexpr std::uint16_t kArgsAreXY = 0x0002;
constexpr std::uint16_t kHaveScale = 0x0008;
constexpr std::uint16_t kMoreComponents = 0x0020;
constexpr std::uint16_t kHaveXYScale = 0x0040;
constexpr std::uint16_t kHaveTwoByTwo = 0x0080;

Point apply(const double (&m)[6], double x, double y) {
  return {m[0] * x + m[2] * y + m[4], m[1] * x + m[3] * y + m[5]};
}

Point midpoint(Point a, Point b) { return {(a.x + b.x) * 0.5, (a.y + b.y) * 0.5}; }

}  // namespace

void BoundingBox::add(Point p) noexcept {
  if (empty) {
    x_min = x_max = p.x;
    y_min = y_max = p.y;
    empty = false;
    return;
  }
  x_min = std::min(x_min, p.x);
  x_max = std::max(x_max, p.x);
  y_min = std::min(y_min, p.y);
  y_max = std::max(y_max, p.y);
}

TrueTypeFont::TrueTypeFont(std::vector<std::uint8_t> data, std::string source)
    : data_(std::move(data)), source_(std::move(source)) {
  if (data_.size() < 12) fail("file too small for a font header");
  const std::uint32_t version = u32(0);
  if (version != 0x00010000 && version != 0x74727565 /* 'true' */) {
    fail("not a TrueType outline font");
  }

  const Table head = find_table("head", true);
  const Table maxp = find_table("maxp", true);
  const Table cmap = find_table("cmap", true);
  glyf_ = find_table("glyf", true);
  loca_ = find_table("loca", true);

  units_per_em_ = u16(head.offset + 18);
  if (units_per_em_ < 16 || units_per_em_ > 16384) fail("implausible unitsPerEm");
  long_loca_ = i16(head.offset + 50) != 0;
  num_glyphs_ = u16(maxp.offset + 4);
  if (num_glyphs_ == 0) fail("font has no glyphs");
  const std::size_t loca_entries = static_cast<std::size_t>(num_glyphs_) + 1;
  if (loca_.length < loca_entries * (long_loca_ ? 4 : 2)) fail("loca table too short");

  // Prefer a full-Unicode subtable, then BMP.
  const std::uint16_t count = u16(cmap.offset + 2);
  int best_rank = 0;
  for (std::uint16_t i = 0; i < count; ++i) {
    const std::size_t rec = cmap.offset + 4 + 8u * i;
    const std::uint16_t platform = u16(rec);
    const std::uint16_t encoding = u16(rec + 2);
    const std::size_t sub = cmap.offset + u32(rec + 4);
    const std::uint16_t format = u16(sub);
    int rank = 0;
    if (format == 12 && (platform == 0 || (platform == 3 && encoding == 10))) rank = 4;
    else if (format == 4 && platform == 3 && encoding == 1) rank = 3;
    else if (format == 4 && platform == 0) rank = 2;
    if (rank > best_rank) {
      best_rank = rank;
      cmap_subtable_ = sub;
      cmap_format_ = format;
    }
  }
  if (best_rank == 0) fail("no supported Unicode cmap subtable (format 4 or 12)");
}

TrueTypeFont TrueTypeFont::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open font '" + path + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return TrueTypeFont(std::move(bytes), path);
}

void TrueTypeFont::fail(const std::string& what) const { throw FormatError(source_, 0, what); }

std::uint8_t TrueTypeFont::u8(std::size_t off) const {
  if (off >= data_.size()) fail("read past end of font data");
  return data_[off];
}

std::uint16_t TrueTypeFont::u16(std::size_t off) const {
  if (off + 2 > data_.size()) fail("read past end of font data");
  return static_cast<std::uint16_t>((data_[off] << 8) | data_[off + 1]);
}

std::uint32_t TrueTypeFont::u32(std::size_t off) const {
  if (off + 4 > data_.size()) fail("read past end of font data");
  return (static_cast<std::uint32_t>(data_[off]) << 24) |
         (static_cast<std::uint32_t>(data_[off + 1]) << 16) |
         (static_cast<std::uint32_t>(data_[off + 2]) << 8) | data_[off + 3];
}

TrueTypeFont::Table TrueTypeFont::find_table(const char* tag, bool required) const {
  const std::uint16_t count = u16(4);
  for (std::uint16_t i = 0; i < count; ++i) {
    const std::size_t rec = 12 + 16u * i;
    if (rec + 16 > data_.size()) fail("table directory truncated");
    if (std::memcmp(&data_[rec], tag, 4) == 0) {
      Table t{u32(rec + 8), u32(rec + 12)};
      if (static_cast<std::size_t>(t.offset) + t.length > data_.size()) {
        fail(std::string("table '") + tag + "' extends past end of file");
      }
      return t;
    }
  }
  if (required) fail(std::string("missing required table '") + tag + "'");
  return {};
}

std::optional<std::uint16_t> TrueTypeFont::glyph_index(char32_t cp) const {
  std::uint32_t glyph = 0;
  const std::size_t t = cmap_subtable_;
  if (cmap_format_ == 4) {
    if (cp > 0xFFFF) return std::nullopt;
    const std::uint16_t seg_count = u16(t + 6) / 2;
    const std::size_t ends = t + 14;
    const std::size_t starts = ends + 2u * seg_count + 2;
    const std::size_t deltas = starts + 2u * seg_count;
    const std::size_t range_offsets = deltas + 2u * seg_count;
    // Segments are sorted by end code.
    std::size_t lo = 0, hi = seg_count;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (u16(ends + 2 * mid) < cp) lo = mid + 1;
      else hi = mid;
    }
    if (lo == seg_count) return std::nullopt;
    const std::uint16_t start = u16(starts + 2 * lo);
    if (cp < start) return std::nullopt;
    const std::uint16_t delta = u16(deltas + 2 * lo);
    const std::uint16_t range_offset = u16(range_offsets + 2 * lo);
    if (range_offset == 0) {
      glyph = (cp + delta) & 0xFFFF;
    } else {
      const std::size_t addr = range_offsets + 2 * lo + range_offset + 2 * (cp - start);
      const std::uint16_t g = u16(addr);
      glyph = g == 0 ? 0 : (g + delta) & 0xFFFF;
    }
  } else {
    const std::uint32_t groups = u32(t + 12);
    std::size_t lo = 0, hi = groups;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      const std::size_t g = t + 16 + 12 * mid;
      if (u32(g + 4) < cp) lo = mid + 1;
      else hi = mid;
    }
    if (lo == groups) return std::nullopt;
    const std::size_t g = t + 16 + 12 * lo;
    const std::uint32_t start = u32(g);
    if (cp < start) return std::nullopt;
    glyph = u32(g + 8) + (cp - start);
  }
  if (glyph == 0 || glyph >= static_cast<std::uint32_t>(num_glyphs_)) return std::nullopt;
  return static_cast<std::uint16_t>(glyph);
}

std::pair<std::size_t, std::size_t> TrueTypeFont::glyph_range(std::uint16_t glyph) const {
  if (glyph >= num_glyphs_) fail("glyph index out of range");
  std::size_t a, b;
  if (long_loca_) {
    a = u32(loca_.offset + 4u * glyph);
    b = u32(loca_.offset + 4u * glyph + 4);
  } else {
    a = 2u * u16(loca_.offset + 2u * glyph);
    b = 2u * u16(loca_.offset + 2u * glyph + 2);
  }
  if (a > b || b > glyf_.length) fail("corrupt loca entry");
  return {glyf_.offset + a, glyf_.offset + b};
}

GlyphOutline TrueTypeFont::outline(std::uint16_t glyph) const {
  GlyphOutline out;
  static constexpr double kIdentity[6] = {1, 0, 0, 1, 0, 0};
  append_outline(glyph, kIdentity, 0, out);
  for (const auto& s : out.segments) {
    out.bounds.add(s.from);
    out.bounds.add(s.to);
    if (s.curved) out.bounds.add(s.ctrl);
  }
  return out;
}

void TrueTypeFont::append_outline(std::uint16_t glyph, const double (&xform)[6], int depth,
                                  GlyphOutline& out) const {
  if (depth > kMaxCompositeDepth) fail("composite glyph nesting too deep");
  auto [off, end] = glyph_range(glyph);
  if (off == end) return;  // no outline, e.g. space
  if (end - off < 10) fail("glyph header truncated");
  const std::int16_t contours = i16(off);
  if (contours >= 0) {
    append_simple(off, end, contours, xform, out);
  } else {
    append_composite(off, end, xform, depth, out);
  }
}

void TrueTypeFont::append_simple(std::size_t off, std::size_t end, int contours,
                                 const double (&xform)[6], GlyphOutline& out) const {
  if (contours == 0) return;
  std::vector<std::uint16_t> end_points(contours);
  std::size_t p = off + 10;
  for (int i = 0; i < contours; ++i, p += 2) {
    end_points[i] = u16(p);
    if (i > 0 && end_points[i] < end_points[i - 1]) fail("contour end points not ascending");
  }
  const std::size_t num_points = static_cast<std::size_t>(end_points.back()) + 1;
  const std::uint16_t instruction_len = u16(p);
  p += 2 + instruction_len;

  std::vector<std::uint8_t> flags;
  flags.reserve(num_points);
  while (flags.size() < num_points) {
    if (p >= end) fail("glyph flags truncated");
    const std::uint8_t f = u8(p++);
    flags.push_back(f);
    if (f & kRepeat) {
      const std::uint8_t n = u8(p++);
      for (int k = 0; k < n && flags.size() < num_points; ++k) flags.push_back(f);
    }
  }

  std::vector<double> xs(num_points), ys(num_points);
  int coord = 0;
  for (std::size_t i = 0; i < num_points; ++i) {
    if (flags[i] & kXShort) {
      const int d = u8(p++);
      coord += (flags[i] & kXSameOrPositive) ? d : -d;
    } else if (!(flags[i] & kXSameOrPositive)) {
      coord += i16(p);
      p += 2;
    }
    xs[i] = coord;
  }
  coord = 0;
  for (std::size_t i = 0; i < num_points; ++i) {
    if (flags[i] & kYShort) {
      const int d = u8(p++);
      coord += (flags[i] & kYSameOrPositive) ? d : -d;
    } else if (!(flags[i] & kYSameOrPositive)) {
      coord += i16(p);
      p += 2;
    }
    ys[i] = coord;
  }
  if (p > end) fail("glyph coordinates truncated");

  std::size_t first = 0;
  for (int c = 0; c < contours; ++c) {
    const std::size_t last = end_points[c];
    const std::size_t n = last - first + 1;
    if (n < 2) {
      first = last + 1;
      continue;
    }
    auto pt = [&](std::size_t k) { return apply(xform, xs[first + k], ys[first + k]); };
    auto on = [&](std::size_t k) { return (flags[first + k] & kOnCurve) != 0; };

    // Start at an on-curve point; synthesize one if the contour has none at its ends.
    Point start;
    std::size_t begin_k;
    if (on(0)) {
      start = pt(0);
      begin_k = 1;
    } else if (on(n - 1)) {
      start = pt(n - 1);
      begin_k = 0;
    } else {
      start = midpoint(pt(0), pt(n - 1));
      begin_k = 0;
    }

    Point current = start;
    std::optional<Point> pending_ctrl;
    const std::size_t stop = on(0) ? n : (on(n - 1) ? n - 1 : n);
    for (std::size_t k = begin_k; k < stop; ++k) {
      const Point q = pt(k);
      if (on(k)) {
        if (pending_ctrl) {
          out.segments.push_back({current, *pending_ctrl, q, true});
          pending_ctrl.reset();
        } else {
          out.segments.push_back({current, {}, q, false});
        }
        current = q;
      } else {
        if (pending_ctrl) {
          const Point mid = midpoint(*pending_ctrl, q);
          out.segments.push_back({current, *pending_ctrl, mid, true});
          current = mid;
        }
        pending_ctrl = q;
      }
    }
    if (pending_ctrl) {
      out.segments.push_back({current, *pending_ctrl, start, true});
    } else if (current.x != start.x || current.y != start.y) {
      out.segments.push_back({current, {}, start, false});
    }
    first = last + 1;
  }
}

void TrueTypeFont::append_composite(std::size_t off, std::size_t end, const double (&xform)[6],
                                    int depth, GlyphOutline& out) const {
  std::size_t p = off + 10;
  std::uint16_t flags = 0;
  do {
    if (p + 4 > end) fail("composite glyph truncated");
    flags = u16(p);
    const std::uint16_t component = u16(p + 2);
    p += 4;
    double dx = 0, dy = 0;
    if (flags & kArgsAreWords) {
      dx = i16(p);
      dy = i16(p + 2);
      p += 4;
    } else {
      dx = static_cast<std::int8_t>(u8(p));
      dy = static_cast<std::int8_t>(u8(p + 1));
      p += 2;
    }
    // Point-matching placement is not supported; such components are placed unshifted.
    if (!(flags & kArgsAreXY)) dx = dy = 0;

    auto f2dot14 = [&](std::size_t at) { return i16(at) / 16384.0; };
    double a = 1, b = 0, c = 0, d = 1;
    if (flags & kHaveScale) {
      a = d = f2dot14(p);
      p += 2;
    } else if (flags & kHaveXYScale) {
      a = f2dot14(p);
      d = f2dot14(p + 2);
      p += 4;
    } else if (flags & kHaveTwoByTwo) {
      a = f2dot14(p);
      b = f2dot14(p + 2);
      c = f2dot14(p + 4);
      d = f2dot14(p + 6);
      p += 8;
    }
    // child maps (x, y) -> (a x + c y + dx, b x + d y + dy), then the parent transform.
    const double child[6] = {
        xform[0] * a + xform[2] * b,
        xform[1] * a + xform[3] * b,
        xform[0] * c + xform[2] * d,
        xform[1] * c + xform[3] * d,
        xform[0] * dx + xform[2] * dy + xform[4],
        xform[1] * dx + xform[3] * dy + xform[5],
    };
    append_outline(component, child, depth + 1, out);
  } while (flags & kMoreComponents);
}

}  // namespace glyphembed
