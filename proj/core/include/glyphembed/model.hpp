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
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "glyphembed/charset.hpp"
#include "glyphembed/embedding.hpp"
#include "glyphembed/rng.hpp"
#include "glyphembed/synthgen.hpp"

namespace glyphembed {

// How characters become classifier inputs. One-hot rows are implicit
// (identity table over the charset); visual rows come from a frozen table.
class InputEncoding {
 public:
  static InputEncoding one_hot(CharSet charset);
  static InputEncoding visual(std::shared_ptr<const VisualEmbeddingTable> table);

  bool is_one_hot() const noexcept { return table_ == nullptr; }
  const CharSet& charset() const noexcept { return charset_; }
  std::size_t width() const noexcept;
  const VisualEmbeddingTable* table() const noexcept { return table_.get(); }
  std::string_view name() const noexcept { return is_one_hot() ? "onehot" : "ve"; }

  // Charset index per character; -1 for characters outside the charset (zero input).
  std::vector<std::int32_t> encode(std::string_view utf8) const;

 private:
  InputEncoding(CharSet charset, std::shared_ptr<const VisualEmbeddingTable> table)
      : charset_(std::move(charset)), table_(std::move(table)) {}

  CharSet charset_;
  std::shared_ptr<const VisualEmbeddingTable> table_;
};

struct ClassifierConfig {
  std::size_t conv_width = 3;
  std::size_t conv_filters = 32;
  std::size_t highway_layers = 1;
  std::size_t classes = 2;
  double learning_rate = 0.05;
  double momentum = 0.9;
  std::size_t batch_size = 64;
  std::size_t epochs = 10;
  std::uint64_t seed = 0;

  // Throws InvalidArgument.
  void validate() const;
  friend bool operator==(const ClassifierConfig&, const ClassifierConfig&) = default;
};

// Named slice of the flat parameter vector, `rows` x `cols` row-major.
struct ParameterBlock {
  std::string name;
  std::size_t offset;
  std::size_t rows;
  std::size_t cols;
  friend bool operator==(const ParameterBlock&, const ParameterBlock&) = default;
};

// conv (ReLU) -> max over time -> highway x L -> linear -> softmax.
// All parameters live in one flat vector; `blocks()` names the slices.
class ClassifierModel {
 public:
  ClassifierModel(ClassifierConfig config, std::size_t input_width);

  // Glorot-uniform weights from Rng(config.seed), zero biases.
  static ClassifierModel initialized(const ClassifierConfig& config, std::size_t input_width);

  const ClassifierConfig& config() const noexcept { return config_; }
  std::size_t input_width() const noexcept { return input_width_; }
  const std::vector<ParameterBlock>& blocks() const noexcept { return blocks_; }
  const ParameterBlock& block(std::string_view name) const;

  std::span<double> parameters() noexcept { return params_; }
  std::span<const double> parameters() const noexcept { return params_; }
  std::span<double> slice(const ParameterBlock& b) noexcept {
    return std::span<double>(params_).subspan(b.offset, b.rows * b.cols);
  }
  std::span<const double> slice(const ParameterBlock& b) const noexcept {
    return std::span<const double>(params_).subspan(b.offset, b.rows * b.cols);
  }

  // Named accessors.
  std::span<double> conv_weight() { return slice(blocks_[0]); }  // filters x (width * input)
  std::span<double> conv_bias() { return slice(blocks_[1]); }
  std::span<double> gate_weight(std::size_t layer) { return slice(blocks_[2 + 4 * layer]); }
  std::span<double> gate_bias(std::size_t layer) { return slice(blocks_[3 + 4 * layer]); }
  std::span<double> candidate_weight(std::size_t layer) { return slice(blocks_[4 + 4 * layer]); }
  std::span<double> candidate_bias(std::size_t layer) { return slice(blocks_[5 + 4 * layer]); }
  std::span<double> output_weight() { return slice(blocks_[blocks_.size() - 2]); }
  std::span<double> output_bias() { return slice(blocks_[blocks_.size() - 1]); }

  friend bool operator==(const ClassifierModel&, const ClassifierModel&) = default;

 private:
  ClassifierConfig config_;
  std::size_t input_width_;
  std::vector<ParameterBlock> blocks_;
  std::vector<double> params_;
};

struct EncodedExample {
  std::vector<std::int32_t> indices;
  int label = 0;
};

std::vector<EncodedExample> encode_dataset(const InputEncoding& encoding,
                                           const std::vector<LabeledSentence>& sentences);

// Intermediate activations for one sequence, kept for backward().
struct ForwardCache {
  std::vector<double> conv;                  // windows x filters, pre-activation
  std::vector<std::size_t> argmax;           // per filter, first maximizing window
  std::vector<std::vector<double>> layer_in; // highway inputs, one per layer, plus the final output
  std::vector<std::vector<double>> gate;     // sigmoid gates
  std::vector<std::vector<double>> cand_pre; // candidate pre-activations
  std::vector<double> logits;
};

struct ForwardResult {
  std::vector<double> probs;
  ForwardCache cache;
};

// Throws SequenceTooShort when fewer characters than the convolution width.
ForwardResult forward(const ClassifierModel& model, const InputEncoding& encoding,
                      std::span<const std::int32_t> indices);

inline constexpr double kProbabilityFloor = 1e-12;
// Cross-entropy with the true-class probability clamped at 1e-12.
double cross_entropy(std::span<const double> probs, int label);

struct Gradient {
  std::vector<double> values;  // same layout as the model parameters
  double mean_loss = 0;
};

// Gradient of the mean batch loss. Max-pool routes to the first argmax.
Gradient backward(const ClassifierModel& model, const InputEncoding& encoding,
                  std::span<const EncodedExample> batch);

int predict(const ClassifierModel& model, const InputEncoding& encoding,
            std::span<const std::int32_t> indices);
// Fraction of argmax-correct predictions; ties go to class 0.
double evaluate(const ClassifierModel& model, const InputEncoding& encoding,
                std::span<const EncodedExample> data);
double evaluate(const ClassifierModel& model, const InputEncoding& encoding,
                const std::vector<LabeledSentence>& data);

struct EpochMetrics {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0;  // mean batch loss during the epoch
  double train_accuracy = 0;
  double val_accuracy = 0;
};

struct TrainResult {
  ClassifierModel model;
  std::vector<EpochMetrics> epochs;
};

// SGD with momentum; shuffles via Rng(stage_seed(config.seed, "shuffle")).
// Throws TrainingDiverged on a non-finite loss.
TrainResult train(const ClassifierConfig& config, const InputEncoding& encoding,
                  const std::vector<LabeledSentence>& train_set,
                  const std::vector<LabeledSentence>& val_set);

std::string format_metrics(const std::vector<EpochMetrics>& epochs);

std::string format_checkpoint(const ClassifierModel& model, const InputEncoding& encoding);
struct Checkpoint {
  ClassifierModel model;
  std::string encoding;  // "onehot" or "ve"
  CharSet charset;
};
Checkpoint parse_checkpoint(std::string_view text, const std::string& source = "<checkpoint>");
void save_checkpoint(const ClassifierModel& model, const InputEncoding& encoding,
                     const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace glyphembed
