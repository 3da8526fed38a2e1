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

#include "glyphembed/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <tuple>

#include "glyphembed/embedding.hpp"
#include "glyphembed/error.hpp"
#include "glyphembed/parallel.hpp"
#include "glyphembed/raster.hpp"
#include "glyphembed/rng.hpp"
#include "glyphembed/text_format.hpp"

namespace glyphembed {

namespace {

struct Cell {
  std::string font;
  std::size_t d;
  InputEncoding encoding;
};

std::string cell_name(const Cell& c) {
  if (c.encoding.is_one_hot()) return "onehot";
  return "ve font=" + c.font + " d=" + std::to_string(c.d);
}

struct NoisedSet {
  NoiseKind kind;
  std::size_t level;
  std::vector<LabeledSentence> data;
};

std::vector<NoisedSet> build_sweep_sets(const ExperimentConfig& config,
                                        const std::vector<LabeledSentence>& clean) {
  std::vector<std::string> texts;
  texts.reserve(clean.size());
  for (const auto& s : clean) texts.push_back(s.text);
  std::vector<NoisedSet> sets;
  for (NoiseKind kind : config.kinds) {
    for (std::size_t level = 0; level < kNoiseLevels; ++level) {
      NoiseSpec spec;
      spec.kind = kind;
      spec.probability = config.base_p * static_cast<double>(level + 1);
      spec.alphabet = config.noise_alphabet;
      spec.seed = stage_seed(config.seed, "sweep/" + std::string(to_string(kind)) + "/" +
                                              std::to_string(level + 1));
      const auto noised = noise_corpus(texts, spec);
      NoisedSet set{kind, level, {}};
      set.data.reserve(clean.size());
      for (std::size_t i = 0; i < clean.size(); ++i) set.data.push_back({noised[i], clean[i].label});
      sets.push_back(std::move(set));
    }
  }
  return sets;
}

// Sequences shorter than the convolution width cannot be scored; count them as wrong.
double guarded_accuracy(const ClassifierModel& model, const InputEncoding& enc,
                        const std::vector<LabeledSentence>& data) {
  auto encoded = encode_dataset(enc, data);
  const std::size_t total = encoded.size();
  std::erase_if(encoded, [&](const EncodedExample& e) { return e.indices.size() < model.config().conv_width; });
  if (encoded.empty()) return 0.0;
  const double acc = evaluate(model, enc, encoded);
  return acc * static_cast<double>(encoded.size()) / static_cast<double>(total);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!include_one_hot && (fonts.empty() || dims.empty())) {
    throw InvalidArgument("experiment grid is empty");
  }
  for (std::size_t d : dims) {
    if (d == 0) throw InvalidArgument("embedding dimension must be positive");
  }
  if (sweep) {
    if (!(base_p > 0) || base_p * kNoiseLevels > 1) {
      throw InvalidArgument("sweep base probability must satisfy 0 < 3p <= 1");
    }
    if (kinds.empty()) throw InvalidArgument("sweep needs at least one noise kind");
    for (NoiseKind k : kinds) NoiseSpec{k, base_p, noise_alphabet, 0}.validate();
  }
  classifier.validate();
}

double sample_stddev(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  double mean = 0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

ExperimentResult run_experiment(const ExperimentConfig& config, const SyntheticDataset& data) {
  config.validate();
  ClassifierConfig classifier = config.classifier;
  classifier.seed = stage_seed(config.seed, "classifier");

  std::vector<Cell> cells;
  if (config.include_one_hot) cells.push_back({"-", config.charset.size(), InputEncoding::one_hot(config.charset)});
  for (const auto& font : config.fonts) {
    const FontSpec spec = make_font_spec(load_font(font.path), font.name, config.charset, config.width,
                                         config.height);
    for (std::size_t d : config.dims) {
      auto table = std::make_shared<const VisualEmbeddingTable>(
          build_visual_embedding(config.charset, spec, FixedDimension{d}));
      cells.push_back({font.name, table->dimension(), InputEncoding::visual(std::move(table))});
    }
  }

  std::vector<LabeledSentence> noised = data.test_mixed;
  noised.insert(noised.end(), data.test_replaced.begin(), data.test_replaced.end());
  const std::vector<NoisedSet> sweep_sets =
      config.sweep ? build_sweep_sets(config, data.test_clean) : std::vector<NoisedSet>{};

  ExperimentResult result;
  result.grid.resize(cells.size());
  std::vector<std::vector<SweepRow>> sweep_rows(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    const Cell& cell = cells[i];
    std::optional<TrainResult> trained;
    try {
      trained.emplace(train(classifier, cell.encoding, data.train, data.val));
    } catch (const TrainingDiverged& e) {
      throw TrainingDiverged(cell_name(cell) + ": " + e.what());
    }
    const ClassifierModel& model = trained->model;
    GridRow& row = result.grid[i];
    row.encoding = std::string(cell.encoding.name());
    row.font = cell.font;
    row.d = cell.d;
    row.train = trained->epochs.back().train_accuracy;
    row.val = trained->epochs.back().val_accuracy;
    row.test_clean = evaluate(model, cell.encoding, data.test_clean);
    row.test_mixed = evaluate(model, cell.encoding, data.test_mixed);
    row.test_replaced = evaluate(model, cell.encoding, data.test_replaced);
    row.test_noised = evaluate(model, cell.encoding, noised);

    for (std::size_t k = 0; k < config.kinds.size() && config.sweep; ++k) {
      SweepRow s{row.encoding, row.font, row.d, config.kinds[k], {}, 0};
      for (std::size_t level = 0; level < kNoiseLevels; ++level) {
        s.accuracy[level] = guarded_accuracy(model, cell.encoding, sweep_sets[k * kNoiseLevels + level].data);
      }
      s.stddev = sample_stddev(s.accuracy);
      sweep_rows[i].push_back(s);
    }
  });

  auto key = [](const GridRow& r) { return std::tie(r.encoding, r.font, r.d); };
  std::sort(result.grid.begin(), result.grid.end(),
            [&](const GridRow& a, const GridRow& b) { return key(a) < key(b); });
  for (auto& rows : sweep_rows) result.sweep.insert(result.sweep.end(), rows.begin(), rows.end());
  std::sort(result.sweep.begin(), result.sweep.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.encoding, a.font, a.d, a.kind) < std::tie(b.encoding, b.font, b.d, b.kind);
  });
  return result;
}

std::string format_grid_tsv(const std::vector<GridRow>& rows) {
  std::string out = "encoding\tfont\td\ttrain\tval\ttest_clean\ttest_mixed\ttest_replaced\ttest_noised\n";
  for (const auto& r : rows) {
    out += r.encoding + "\t" + r.font + "\t" + std::to_string(r.d);
    for (double v : {r.train, r.val, r.test_clean, r.test_mixed, r.test_replaced, r.test_noised}) {
      out += "\t" + format_real(v);
    }
    out += "\n";
  }
  return out;
}

std::string format_sweep_tsv(const std::vector<SweepRow>& rows, double base_p) {
  std::string out = "encoding\tfont\td\tkind";
  for (std::size_t level = 0; level < kNoiseLevels; ++level) {
    out += "\tnl=" + format_real(base_p * static_cast<double>(level + 1));
  }
  out += "\tstd\n";
  for (const auto& r : rows) {
    out += r.encoding + "\t" + r.font + "\t" + std::to_string(r.d) + "\t" + std::string(to_string(r.kind));
    for (double v : r.accuracy) out += "\t" + format_real(v);
    out += "\t" + format_real(r.stddev) + "\n";
  }
  return out;
}

std::string align_tsv(const std::string& tsv) {
  std::vector<std::vector<std::string_view>> cells;
  std::vector<std::size_t> widths;
  for (std::string_view line : split_lines(tsv)) {
    cells.push_back(split(line, '\t'));
    const auto& row = cells.back();
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  }
  std::string out;
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(widths[i] - row[i].size() + 2, ' ');
    }
    out += line + "\n";
  }
  return out;
}

}  // namespace glyphembed
