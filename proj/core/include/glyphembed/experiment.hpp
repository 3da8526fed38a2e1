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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "glyphembed/charset.hpp"
#include "glyphembed/model.hpp"
#include "glyphembed/noise.hpp"
#include "glyphembed/synthgen.hpp"

namespace glyphembed {

struct FontChoice {
  std::string name;
  std::filesystem::path path;
};

struct ExperimentConfig {
  CharSet charset = CharSet::printable_ascii();
  std::vector<FontChoice> fonts;
  std::vector<std::size_t> dims = {20, 50, 80};
  std::size_t width = 15;
  std::size_t height = 15;
  bool include_one_hot = true;
  ClassifierConfig classifier;  // classifier.seed is overwritten from `seed`
  std::uint64_t seed = 0;

  // Noise-level sweep: levels are base_p * {1, 2, 3}.
  bool sweep = false;
  double base_p = 0.1;
  std::vector<NoiseKind> kinds = {NoiseKind::kDelete, NoiseKind::kInsert, NoiseKind::kReplace,
                                  NoiseKind::kSwap, NoiseKind::kAll};
  std::u32string noise_alphabet = U"abcdefghijklmnopqrstuvwxyz";

  void validate() const;
};

// One trained configuration. For one-hot rows font is "-" and d is |C|.
struct GridRow {
  std::string encoding;
  std::string font;
  std::size_t d = 0;
  double train = 0;
  double val = 0;
  double test_clean = 0;
  double test_mixed = 0;
  double test_replaced = 0;
  double test_noised = 0;  // mixed and replaced pooled
};

inline constexpr std::size_t kNoiseLevels = 3;

struct SweepRow {
  std::string encoding;
  std::string font;
  std::size_t d = 0;
  NoiseKind kind = NoiseKind::kAll;
  std::array<double, kNoiseLevels> accuracy{};
  double stddev = 0;  // sample standard deviation (n - 1) of `accuracy`
};

struct ExperimentResult {
  std::vector<GridRow> grid;    // sorted by (encoding, font, d)
  std::vector<SweepRow> sweep;  // sorted by (encoding, font, d, kind)
};

// Cells train in parallel; classifier seed is stage_seed(seed, "classifier") for every cell.
// Throws TrainingDiverged naming the failing configuration.
ExperimentResult run_experiment(const ExperimentConfig& config, const SyntheticDataset& data);

double sample_stddev(std::span<const double> values);

std::string format_grid_tsv(const std::vector<GridRow>& rows);
std::string format_sweep_tsv(const std::vector<SweepRow>& rows, double base_p);
// Space-aligned rendering of a TSV for terminals.
std::string align_tsv(const std::string& tsv);

}  // namespace glyphembed
