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
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "glyphembed/charset.hpp"
#include "glyphembed/pca.hpp"
#include "glyphembed/raster.hpp"

namespace glyphembed {

inline constexpr int kTableFormatVersion = 1;
inline constexpr const char* kBuilderVersion = "glyphembed-0.1";

struct EmbeddingMetadata {
  std::string font_name;
  std::size_t width = 0;   // m
  std::size_t height = 0;  // n
  double point_size = 0;   // not persisted in table files; 0 after load
  double variance_ratio = 0;
  std::string builder_version;
  std::size_t requested_d = 0;  // FixedD request before clamping to d_max; 0 for thresholds
  bool clamped = false;

  friend bool operator==(const EmbeddingMetadata&, const EmbeddingMetadata&) = default;
};

// One d-dimensional vector per charset entry, row i for charset[i].
class VisualEmbeddingTable {
 public:
  VisualEmbeddingTable(CharSet charset, std::size_t d, std::vector<double> vectors,
                       EmbeddingMetadata metadata);

  const CharSet& charset() const noexcept { return charset_; }
  std::size_t dimension() const noexcept { return d_; }
  std::size_t size() const noexcept { return charset_.size(); }
  const EmbeddingMetadata& metadata() const noexcept { return metadata_; }
  std::span<const double> vectors() const noexcept { return vectors_; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(vectors_).subspan(i * d_, d_);
  }
  // Throws UnknownChar.
  std::span<const double> vector_for(char32_t c) const;

 private:
  CharSet charset_;
  std::size_t d_;
  std::vector<double> vectors_;
  EmbeddingMetadata metadata_;
};

struct FixedDimension {
  std::size_t d;
};
struct VarianceThreshold {
  double threshold;
};
using DimensionSelector = std::variant<FixedDimension, VarianceThreshold>;

struct EmbeddingBuild {
  VisualEmbeddingTable table;
  PcaModel pca;
};

EmbeddingBuild build_embedding(const CharSet& charset, const FontSpec& spec,
                               const DimensionSelector& selector,
                               MissingGlyphPolicy policy = MissingGlyphPolicy::kNotdef);

VisualEmbeddingTable build_visual_embedding(const CharSet& charset, const FontSpec& spec,
                                            const DimensionSelector& selector,
                                            MissingGlyphPolicy policy = MissingGlyphPolicy::kNotdef);

std::string format_table(const VisualEmbeddingTable& table);
VisualEmbeddingTable parse_table(std::string_view text, const std::string& source = "<table>");
void save_table(const VisualEmbeddingTable& table, const std::filesystem::path& path);
VisualEmbeddingTable load_table(const std::filesystem::path& path);

struct Neighbor {
  char32_t codepoint;
  double similarity;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

double cosine_similarity(std::span<const double> a, std::span<const double> b);

// Top-k cosine neighbours of c, descending; self and zero vectors excluded,
// ties by ascending codepoint. Throws UnknownChar, DegenerateInput if c's vector is zero.
std::vector<Neighbor> nearest_neighbors(const VisualEmbeddingTable& table, char32_t c,
                                        std::size_t k);

// |C| x |C| row-major; zero vectors give similarity 0.
std::vector<double> cosine_similarity_matrix(const VisualEmbeddingTable& table);

struct LayoutPoint {
  char32_t codepoint;
  double x;
  double y;
};

// First two columns of the table. Throws DegenerateInput when d < 2.
std::vector<LayoutPoint> layout_2d(const VisualEmbeddingTable& table);
std::string format_layout(const std::vector<LayoutPoint>& layout);
std::string format_neighbors(const std::vector<Neighbor>& neighbors);

struct EmbeddedText {
  std::size_t d = 0;
  std::vector<double> values;  // length() x d
  std::size_t unknown = 0;

  std::size_t length() const noexcept { return d ? values.size() / d : 0; }
  std::span<const double> at(std::size_t i) const {
    return std::span<const double>(values).subspan(i * d, d);
  }
};

// Characters outside the charset map to zero vectors and are counted.
EmbeddedText embed_text(const VisualEmbeddingTable& table, std::u32string_view text);
EmbeddedText embed_text(const VisualEmbeddingTable& table, std::string_view utf8);

}  // namespace glyphembed
