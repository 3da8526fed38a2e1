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

#include <cmath>
#include <vector>

#include "glyphembed/error.hpp"
#include "glyphembed/experiment.hpp"
#include "glyphembed/text_format.hpp"
#include "test_fonts.hpp"

namespace glyphembed {
namespace {

SyntheticDataset small_data() {
  DatasetConfig d;
  d.train = 600;
  d.val = 200;
  d.test = 200;
  d.seed = 1;
  return generate_dataset(d);
}

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.fonts = {{"DejaVuSans", testing::font_path("DejaVuSans.ttf")},
             {"DejaVuSerif", testing::font_path("DejaVuSerif.ttf")}};
  c.classifier.epochs = 2;
  c.classifier.conv_filters = 8;
  c.sweep = true;
  c.kinds = {NoiseKind::kDelete, NoiseKind::kAll};
  return c;
}

TEST(Experiment, SampleStddev) {
  const std::vector<double> v = {1, 2, 3};
  EXPECT_DOUBLE_EQ(sample_stddev(v), 1.0);
  const std::vector<double> w = {0.9, 0.8, 0.7};
  EXPECT_NEAR(sample_stddev(w), 0.1, 1e-12);
  EXPECT_EQ(sample_stddev(std::vector<double>{5}), 0.0);
}

TEST(Experiment, GridShapeAndDeterminism) {
  const auto data = small_data();
  const auto config = small_config();
  const auto r = run_experiment(config, data);
  ASSERT_EQ(r.grid.size(), 7u);
  EXPECT_EQ(r.grid[0].encoding, "onehot");
  EXPECT_EQ(r.grid[0].font, "-");
  EXPECT_EQ(r.grid[0].d, 95u);
  EXPECT_EQ(r.grid[1].font, "DejaVuSans");
  EXPECT_EQ(r.grid[1].d, 20u);
  EXPECT_EQ(r.grid[6].font, "DejaVuSerif");
  EXPECT_EQ(r.grid[6].d, 80u);
  for (const auto& row : r.grid) {
    for (double a : {row.train, row.val, row.test_clean, row.test_mixed, row.test_replaced, row.test_noised}) {
      EXPECT_GE(a, 0.0);
      EXPECT_LE(a, 1.0);
    }
    EXPECT_NEAR(row.test_noised, (row.test_mixed + row.test_replaced) / 2, 1e-12);
  }
  ASSERT_EQ(r.sweep.size(), 14u);
  for (const auto& s : r.sweep) EXPECT_NEAR(s.stddev, sample_stddev(s.accuracy), 1e-15);

  const auto again = run_experiment(config, data);
  EXPECT_EQ(format_grid_tsv(again.grid), format_grid_tsv(r.grid));
  EXPECT_EQ(format_sweep_tsv(again.sweep, 0.1), format_sweep_tsv(r.sweep, 0.1));

  const std::string grid = format_grid_tsv(r.grid);
  EXPECT_EQ(split_lines(grid)[0], "encoding\tfont\td\ttrain\tval\ttest_clean\ttest_mixed\ttest_replaced\ttest_noised");
  EXPECT_EQ(split_lines(format_sweep_tsv(r.sweep, 0.1))[0], "encoding\tfont\td\tkind\tnl=0.1\tnl=0.2\tnl=0.3\tstd");
}

TEST(Experiment, Validation) {
  ExperimentConfig c = small_config();
  c.base_p = 0.5;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = small_config();
  c.dims = {0};
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = small_config();
  c.include_one_hot = false;
  c.fonts.clear();
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(Experiment, AlignTsv) {
  EXPECT_EQ(align_tsv("a\tbb\nccc\td\n"), "a    bb\nccc  d\n");
}

}  // namespace
}  // namespace glyphembed
