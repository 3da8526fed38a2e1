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

#include "glyphembed/embedding.hpp"

#include <algorithm>
#include <cmath>

#include "glyphembed/error.hpp"
#include "glyphembed/text_format.hpp"

namespace glyphembed {

namespace {

double norm(std::span<const double> v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

bool valid_font_name(std::string_view name) {
  return !name.empty() && name.find_first_of("\t\r\n") == std::string_view::npos;
}

}  // namespace

VisualEmbeddingTable::VisualEmbeddingTable(CharSet charset, std::size_t d,
                                           std::vector<double> vectors, EmbeddingMetadata metadata)
    : charset_(std::move(charset)), d_(d), vectors_(std::move(vectors)), metadata_(std::move(metadata)) {
  if (d_ == 0) throw InvalidArgument("embedding dimension must be positive");
  if (vectors_.size() != charset_.size() * d_) {
    throw DimensionMismatch(charset_.size() * d_, vectors_.size());
  }
  if (metadata_.width && metadata_.height &&
      d_ > std::min(charset_.size(), metadata_.width * metadata_.height)) {
    throw InvalidArgument("embedding dimension exceeds min(|C|, m*n)");
  }
  if (!(metadata_.variance_ratio >= 0 && metadata_.variance_ratio <= 1)) {
    throw InvalidArgument("explained variance ratio must lie in [0, 1]");
  }
}

std::span<const double> VisualEmbeddingTable::vector_for(char32_t c) const {
  auto idx = charset_.index_of(c);
  if (!idx) throw UnknownChar(c);
  return row(*idx);
}

EmbeddingBuild build_embedding(const CharSet& charset, const FontSpec& spec,
                               const DimensionSelector& selector, MissingGlyphPolicy policy) {
  if (!valid_font_name(spec.font_name)) {
    throw InvalidArgument("font name must be nonempty and free of tabs and newlines");
  }
  const RasterMatrix raster = build_raster_matrix(charset, spec, policy);
  PcaModel pca = fit_pca(raster);

  EmbeddingMetadata meta;
  meta.font_name = spec.font_name;
  meta.width = spec.width;
  meta.height = spec.height;
  meta.point_size = spec.point_size;
  meta.builder_version = kBuilderVersion;

  std::size_t d = 0;
  if (const auto* fixed = std::get_if<FixedDimension>(&selector)) {
    if (fixed->d < 1) throw InvalidArgument("fixed dimension must be at least 1");
    meta.requested_d = fixed->d;
    d = std::min(fixed->d, pca.max_dimension());
    meta.clamped = d != fixed->d;
  } else {
    d = choose_dimension(pca, std::get<VarianceThreshold>(selector).threshold);
  }
  meta.variance_ratio = explained_variance_ratio(pca, d);

  std::vector<double> vectors;
  vectors.reserve(charset.size() * d);
  for (std::size_t i = 0; i < charset.size(); ++i) {
    const std::vector<double> v = project(pca, raster.row(i), d);
    vectors.insert(vectors.end(), v.begin(), v.end());
  }
  return {VisualEmbeddingTable(charset, d, std::move(vectors), std::move(meta)), std::move(pca)};
}

VisualEmbeddingTable build_visual_embedding(const CharSet& charset, const FontSpec& spec,
                                            const DimensionSelector& selector,
                                            MissingGlyphPolicy policy) {
  return build_embedding(charset, spec, selector, policy).table;
}

std::string format_table(const VisualEmbeddingTable& table) {
  const auto& meta = table.metadata();
  std::string out = "#ve\tversion=" + std::to_string(kTableFormatVersion) + "\tfont=" +
                    meta.font_name + "\tm=" + std::to_string(meta.width) +
                    "\tn=" + std::to_string(meta.height) + "\td=" + std::to_string(table.dimension()) +
                    "\tratio=" + format_real(meta.variance_ratio) + "\n";
  for (std::size_t i = 0; i < table.size(); ++i) {
    out += format_codepoint(table.charset()[i]);
    for (double v : table.row(i)) {
      out += '\t';
      out += format_real(v);
    }
    out += '\n';
  }
  return out;
}

VisualEmbeddingTable parse_table(std::string_view text, const std::string& source) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw FormatError(source, 1, "empty file");
  if (!text.empty() && text.back() != '\n') {
    throw FormatError(source, lines.size(), "line is not newline-terminated (truncated file?)");
  }

  const auto header = split(lines[0], '\t');
  if (header.size() != 7 || header[0] != "#ve") {
    throw FormatError(source, 1, "expected '#ve' header with 6 tab-separated fields");
  }
  auto field = [&](std::size_t i, std::string_view key) -> std::string_view {
    std::string_view f = header[i];
    if (f.size() <= key.size() || f.substr(0, key.size()) != key || f[key.size()] != '=') {
      throw FormatError(source, 1, "expected header field '" + std::string(key) + "='");
    }
    return f.substr(key.size() + 1);
  };
  auto uint_field = [&](std::size_t i, std::string_view key) {
    auto v = parse_uint(field(i, key));
    if (!v || *v == 0) throw FormatError(source, 1, "bad value for '" + std::string(key) + "'");
    return static_cast<std::size_t>(*v);
  };

  if (uint_field(1, "version") != static_cast<std::size_t>(kTableFormatVersion)) {
    throw FormatError(source, 1, "unsupported table version");
  }
  EmbeddingMetadata meta;
  meta.font_name = std::string(field(2, "font"));
  meta.width = uint_field(3, "m");
  meta.height = uint_field(4, "n");
  const std::size_t d = uint_field(5, "d");
  auto ratio = parse_real(field(6, "ratio"));
  if (!ratio || *ratio < 0 || *ratio > 1) throw FormatError(source, 1, "bad value for 'ratio'");
  meta.variance_ratio = *ratio;

  std::vector<char32_t> cps;
  std::vector<double> vectors;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    const auto fields = split(lines[ln], '\t');
    if (fields.size() != d + 1) {
      throw FormatError(source, ln + 1,
                        "expected " + std::to_string(d + 1) + " fields, got " +
                            std::to_string(fields.size()));
    }
    auto cp = parse_codepoint(fields[0]);
    if (!cp) throw FormatError(source, ln + 1, "bad codepoint '" + std::string(fields[0]) + "'");
    if (!cps.empty() && *cp <= cps.back()) {
      throw FormatError(source, ln + 1, "codepoints must be strictly ascending");
    }
    cps.push_back(*cp);
    for (std::size_t k = 1; k <= d; ++k) {
      auto v = parse_real(fields[k]);
      if (!v) throw FormatError(source, ln + 1, "bad number '" + std::string(fields[k]) + "'");
      vectors.push_back(*v);
    }
  }
  if (cps.size() < 2) {
    throw FormatError(source, lines.size(), "table needs at least 2 characters, got " +
                                                std::to_string(cps.size()));
  }
  try {
    return VisualEmbeddingTable(CharSet(std::move(cps)), d, std::move(vectors), std::move(meta));
  } catch (const InvalidArgument& e) {
    throw FormatError(source, 1, e.what());
  }
}

void save_table(const VisualEmbeddingTable& table, const std::filesystem::path& path) {
  write_file(path, format_table(table));
}

VisualEmbeddingTable load_table(const std::filesystem::path& path) {
  return parse_table(read_file(path), path.string());
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0 || nb == 0) return 0;
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s / (na * nb);
}

std::vector<Neighbor> nearest_neighbors(const VisualEmbeddingTable& table, char32_t c,
                                        std::size_t k) {
  auto self = table.charset().index_of(c);
  if (!self) throw UnknownChar(c);
  if (k == 0) return {};
  const auto query = table.row(*self);
  if (norm(query) == 0) {
    throw DegenerateInput("vector for " + format_codepoint(c) + " is zero; cosine undefined");
  }
  std::vector<Neighbor> candidates;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (i == *self || norm(table.row(i)) == 0) continue;
    candidates.push_back({table.charset()[i], cosine_similarity(query, table.row(i))});
  }
  auto better = [](const Neighbor& a, const Neighbor& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.codepoint < b.codepoint;
  };
  const std::size_t take = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take),
                    candidates.end(), better);
  candidates.resize(take);
  return candidates;
}

std::vector<double> cosine_similarity_matrix(const VisualEmbeddingTable& table) {
  const std::size_t n = table.size();
  std::vector<double> sims(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      sims[i * n + j] = sims[j * n + i] = cosine_similarity(table.row(i), table.row(j));
    }
  }
  return sims;
}

std::vector<LayoutPoint> layout_2d(const VisualEmbeddingTable& table) {
  if (table.dimension() < 2) {
    throw DegenerateInput("2-D layout needs d >= 2, table has d = " +
                          std::to_string(table.dimension()));
  }
  std::vector<LayoutPoint> out;
  out.reserve(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    out.push_back({table.charset()[i], table.row(i)[0], table.row(i)[1]});
  }
  return out;
}

std::string format_layout(const std::vector<LayoutPoint>& layout) {
  std::string out = "codepoint\tchar\tx\ty\n";
  for (const auto& p : layout) {
    out += format_codepoint(p.codepoint) + "\t";
    // Printable form for plotting; tabs and control characters are left blank.
    if (p.codepoint > 0x20 && p.codepoint != 0x7F) append_utf8(out, p.codepoint);
    out += "\t" + format_real(p.x) + "\t" + format_real(p.y) + "\n";
  }
  return out;
}

std::string format_neighbors(const std::vector<Neighbor>& neighbors) {
  std::string out = "rank\tcodepoint\tchar\tcosine\n";
  std::size_t rank = 1;
  for (const auto& n : neighbors) {
    out += std::to_string(rank++) + "\t" + format_codepoint(n.codepoint) + "\t";
    if (n.codepoint > 0x20 && n.codepoint != 0x7F) append_utf8(out, n.codepoint);
    out += "\t" + format_real(n.similarity) + "\n";
  }
  return out;
}

EmbeddedText embed_text(const VisualEmbeddingTable& table, std::u32string_view text) {
  EmbeddedText out;
  out.d = table.dimension();
  out.values.assign(text.size() * out.d, 0.0);
  for (std::size_t i = 0; i < text.size(); ++i) {
    auto idx = table.charset().index_of(text[i]);
    if (!idx) {
      ++out.unknown;
      continue;
    }
    const auto row = table.row(*idx);
    std::copy(row.begin(), row.end(), out.values.begin() + static_cast<std::ptrdiff_t>(i * out.d));
  }
  return out;
}

EmbeddedText embed_text(const VisualEmbeddingTable& table, std::string_view utf8) {
  return embed_text(table, decode_utf8(utf8));
}

}  // namespace glyphembed
