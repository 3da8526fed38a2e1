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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <memory>

#include "glyphembed/embedding.hpp"
#include "glyphembed/error.hpp"
#include "glyphembed/text_format.hpp"
#include "test_fonts.hpp"

namespace glyphembed {
namespace {

const CharSet& ascii() {
  static const CharSet cs = CharSet::printable_ascii();
  return cs;
}

FontSpec spec_for(const std::shared_ptr<const TrueTypeFont>& font, const std::string& name) {
  return make_font_spec(font, name, ascii());
}

const EmbeddingBuild& serif_95() {
  static const EmbeddingBuild b = build_embedding(ascii(), spec_for(testing::serif(), "DejaVuSerif"),
                                                  VarianceThreshold{0.95});
  return b;
}

const EmbeddingBuild& sans_95() {
  static const EmbeddingBuild b = build_embedding(ascii(), spec_for(testing::sans(), "DejaVuSans"),
                                                  VarianceThreshold{0.95});
  return b;
}

std::size_t count_in(const std::vector<Neighbor>& ns, std::u32string_view set) {
  std::size_t n = 0;
  for (const auto& nb : ns) n += set.find(nb.codepoint) != std::u32string_view::npos;
  return n;
}

TEST(Embedding, ThresholdDimensionIsBelowCharsetSize) {
  for (const EmbeddingBuild* b : {&serif_95(), &sans_95()}) {
    EXPECT_LT(b->table.dimension(), 95u);
    EXPECT_GE(b->table.metadata().variance_ratio, 0.95);
    EXPECT_LT(explained_variance_ratio(b->pca, b->table.dimension() - 1), 0.95);
  }
}

TEST(Embedding, FullVarianceGivesRank) {
  const auto b = build_embedding(ascii(), spec_for(testing::serif(), "s"), VarianceThreshold{1.0});
  EXPECT_EQ(b.table.dimension(), pca_rank(b.pca));
}

TEST(Embedding, FixedDimension) {
  const auto b = build_embedding(ascii(), spec_for(testing::serif(), "s"), FixedDimension{80});
  EXPECT_EQ(b.table.dimension(), 80u);
  EXPECT_GE(b.table.metadata().variance_ratio, explained_variance_ratio(b.pca, 79));
  EXPECT_FALSE(b.table.metadata().clamped);
  EXPECT_EQ(b.table.metadata().requested_d, 80u);
  EXPECT_EQ(b.table.metadata().width, 15u);
  EXPECT_EQ(b.table.metadata().font_name, "s");

  const auto big = build_visual_embedding(ascii(), spec_for(testing::serif(), "s"), FixedDimension{500});
  EXPECT_EQ(big.dimension(), 95u);
  EXPECT_TRUE(big.metadata().clamped);
  EXPECT_THROW(build_visual_embedding(ascii(), spec_for(testing::serif(), "s"), FixedDimension{0}),
               InvalidArgument);
  EXPECT_THROW(build_visual_embedding(ascii(), spec_for(testing::serif(), "s"), VarianceThreshold{1.5}),
               InvalidArgument);
}

TEST(Embedding, RowsAreProjections) {
  const auto& b = serif_95();
  const RasterMatrix raster = build_raster_matrix(ascii(), spec_for(testing::serif(), "DejaVuSerif"));
  for (std::size_t i : {std::size_t{0}, std::size_t{33}, std::size_t{94}}) {
    const auto expected = project(b.pca, raster.row(i), b.table.dimension());
    const auto got = b.table.row(i);
    for (std::size_t k = 0; k < expected.size(); ++k) EXPECT_EQ(got[k], expected[k]);
  }
}

TEST(Embedding, SpaceRowIsProjectionOfBlank) {
  const CharSet cs = CharSet::from_utf8(" AB");
  const auto b = build_embedding(cs, make_font_spec(testing::serif(), "s", cs), FixedDimension{3});
  EXPECT_EQ(b.table.size(), 3u);
  const std::vector<double> blank(225, 0.0);
  const auto expected = project(b.pca, blank, b.table.dimension());
  const auto got = b.table.vector_for(U' ');
  for (std::size_t k = 0; k < expected.size(); ++k) EXPECT_NEAR(got[k], expected[k], 1e-12);
}

TEST(Embedding, Deterministic) {
  const auto a = build_visual_embedding(ascii(), spec_for(testing::sans(), "x"), FixedDimension{20});
  const auto b = build_visual_embedding(ascii(), spec_for(testing::sans(), "x"), FixedDimension{20});
  EXPECT_EQ(format_table(a), format_table(b));
}

TEST(Embedding, TableRoundTrip) {
  const auto& t = serif_95().table;
  const std::string text = format_table(t);
  EXPECT_EQ(text.rfind("#ve\tversion=1\tfont=DejaVuSerif\tm=15\tn=15\td=", 0), 0u);
  const auto back = parse_table(text);
  EXPECT_EQ(back.dimension(), t.dimension());
  EXPECT_EQ(format_table(back), text);

  const auto dir = std::filesystem::temp_directory_path() / "glyphembed_table_rt";
  std::filesystem::create_directories(dir);
  save_table(t, dir / "t.tsv");
  EXPECT_EQ(format_table(load_table(dir / "t.tsv")), text);
  EXPECT_EQ(read_file(dir / "t.tsv"), text);
  std::filesystem::remove_all(dir);
}

TEST(Embedding, TableFormatErrors) {
  const std::string text = format_table(serif_95().table);
  const auto lines = split_lines(text);
  std::string truncated;
  for (std::size_t i = 0; i < 10; ++i) truncated += std::string(lines[i]) + "\n";
  // Chop the last line mid-row.
  const std::string last(lines[10]);
  truncated += last.substr(0, last.size() / 2) + "\n";
  try {
    parse_table(truncated, "t.tsv");
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("t.tsv:11"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_table(std::string(lines[0]) + "\n"), FormatError);
  EXPECT_THROW(parse_table(""), FormatError);
  EXPECT_THROW(parse_table("#ve\tversion=2\tfont=x\tm=15\tn=15\td=1\tratio=1\nU+0041\t1\n"), FormatError);
  EXPECT_THROW(load_table("/nonexistent/table.tsv"), IoError);
}

TEST(Embedding, NeighborContracts) {
  const auto& t = serif_95().table;
  EXPECT_TRUE(nearest_neighbors(t, U'O', 0).empty());
  const auto all = nearest_neighbors(t, U'O', 200);
  EXPECT_LE(all.size(), 94u);
  for (const auto& n : all) EXPECT_NE(n.codepoint, U'O');
  for (std::size_t i = 1; i < all.size(); ++i) EXPECT_GE(all[i - 1].similarity, all[i].similarity);
  EXPECT_THROW(nearest_neighbors(t, U'é', 5), UnknownChar);
}

TEST(Embedding, GlyphClusters) {
  for (const EmbeddingBuild* b : {&serif_95(), &sans_95()}) {
    const auto o = nearest_neighbors(b->table, U'O', 5);
    ASSERT_EQ(o.size(), 5u);
    EXPECT_GE(count_in(o, U"CQG"), 2u) << b->table.metadata().font_name;
    EXPECT_GE(count_in(nearest_neighbors(b->table, U'e', 5), U"oc"), 1u) << b->table.metadata().font_name;
  }
}

TEST(Embedding, NeighborsAgreeAcrossFonts) {
  const auto a = nearest_neighbors(serif_95().table, U'O', 5);
  const auto b = nearest_neighbors(sans_95().table, U'O', 5);
  std::size_t overlap = 0;
  for (const auto& x : a)
    for (const auto& y : b) overlap += x.codepoint == y.codepoint;
  EXPECT_GE(overlap, 2u);
}

TEST(Embedding, CosineMatrixIsSymmetric) {
  const auto& t = serif_95().table;
  const auto m = cosine_similarity_matrix(t);
  const std::size_t n = t.size();
  ASSERT_EQ(m.size(), n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) EXPECT_NEAR(m[i * n + j], m[j * n + i], 1e-12);
  const std::vector<double> a = {1, 0}, b = {0, 2}, c = {3, 0};
  EXPECT_EQ(cosine_similarity(a, b), 0.0);
  EXPECT_DOUBLE_EQ(cosine_similarity(a, c), 1.0);
}

TEST(Embedding, Layout) {
  const auto& t = serif_95().table;
  const auto layout = layout_2d(t);
  ASSERT_EQ(layout.size(), 95u);
  auto at = [&](char32_t c) { return layout[*ascii().index_of(c)]; };
  auto dist = [](const LayoutPoint& p, const LayoutPoint& q) { return std::hypot(p.x - q.x, p.y - q.y); };
  EXPECT_LT(dist(at(U'e'), at(U'o')), dist(at(U'e'), at(U'W')));
  EXPECT_EQ(at(U'A').x, t.vector_for(U'A')[0]);
  EXPECT_EQ(at(U'A').y, t.vector_for(U'A')[1]);
  EXPECT_EQ(format_layout(layout), format_layout(layout_2d(t)));

  const auto one = build_visual_embedding(ascii(), spec_for(testing::serif(), "s"), FixedDimension{1});
  EXPECT_THROW(layout_2d(one), DegenerateInput);
}

TEST(Embedding, EmbedText) {
  const auto& t = serif_95().table;
  const auto empty = embed_text(t, std::string_view(""));
  EXPECT_EQ(empty.length(), 0u);
  EXPECT_EQ(empty.unknown, 0u);

  const auto outside = embed_text(t, std::string_view("éè"));
  EXPECT_EQ(outside.length(), 2u);
  EXPECT_EQ(outside.unknown, 2u);
  for (double v : outside.values) EXPECT_EQ(v, 0.0);

  const auto aa = embed_text(t, std::string_view("AA"));
  ASSERT_EQ(aa.length(), 2u);
  EXPECT_TRUE(std::equal(aa.at(0).begin(), aa.at(0).end(), aa.at(1).begin()));
  EXPECT_TRUE(std::equal(aa.at(0).begin(), aa.at(0).end(), t.vector_for(U'A').begin()));
}

}  // namespace
}  // namespace glyphembed
