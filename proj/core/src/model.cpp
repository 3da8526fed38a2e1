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

#include "glyphembed/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "glyphembed/error.hpp"
#include "glyphembed/parallel.hpp"
#include "glyphembed/text_format.hpp"

namespace glyphembed {

namespace {

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

void softmax(std::span<const double> logits, std::span<double> out) {
  const double top = *std::max_element(logits.begin(), logits.end());
  double sum = 0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - top);
    sum += out[i];
  }
  for (double& p : out) p /= sum;
}

// Per-character, per-offset filter responses: lookup[(c * width + k) * filters + f]
// is the contribution of character c at window offset k to filter f. Turns the
// convolution into table lookups and is rebuilt whenever the kernel changes.
class ConvLookup {
 public:
  ConvLookup(const ClassifierModel& model, const InputEncoding& encoding)
      : chars_(encoding.charset().size()),
        width_(model.config().conv_width),
        filters_(model.config().conv_filters),
        table_(chars_ * width_ * filters_, 0.0) {
    const std::size_t in = model.input_width();
    const auto kernel = model.slice(model.blocks()[0]);
    const std::size_t row = width_ * in;
    if (encoding.is_one_hot()) {
      for (std::size_t c = 0; c < chars_; ++c)
        for (std::size_t k = 0; k < width_; ++k)
          for (std::size_t f = 0; f < filters_; ++f)
            table_[(c * width_ + k) * filters_ + f] = kernel[f * row + k * in + c];
    } else {
      const auto* ve = encoding.table();
      for (std::size_t c = 0; c < chars_; ++c) {
        const auto e = ve->row(c);
        for (std::size_t k = 0; k < width_; ++k)
          for (std::size_t f = 0; f < filters_; ++f) {
            const double* w = kernel.data() + f * row + k * in;
            double s = 0;
            for (std::size_t j = 0; j < in; ++j) s += w[j] * e[j];
            table_[(c * width_ + k) * filters_ + f] = s;
          }
      }
    }
  }

  const double* at(std::size_t c, std::size_t k) const {
    return table_.data() + (c * width_ + k) * filters_;
  }

 private:
  std::size_t chars_, width_, filters_;
  std::vector<double> table_;
};

struct Shapes {
  std::size_t filters, width, layers, classes, input;
};

Shapes shapes_of(const ClassifierModel& m) {
  const auto& c = m.config();
  return {c.conv_filters, c.conv_width, c.highway_layers, c.classes, m.input_width()};
}

// Forward pass; fills `cache` when non-null. Writes class probabilities to `probs`.
void run_forward(const ClassifierModel& model, const ConvLookup& lookup,
                 std::span<const std::int32_t> x, std::span<double> probs, ForwardCache* cache) {
  const Shapes s = shapes_of(model);
  if (x.size() < s.width) throw SequenceTooShort(x.size(), s.width);
  const std::size_t windows = x.size() - s.width + 1;
  const auto& blocks = model.blocks();
  const auto bias = model.slice(blocks[1]);

  std::vector<double> conv(windows * s.filters);
  for (std::size_t t = 0; t < windows; ++t) {
    double* z = conv.data() + t * s.filters;
    std::copy(bias.begin(), bias.end(), z);
    for (std::size_t k = 0; k < s.width; ++k) {
      const std::int32_t c = x[t + k];
      if (c < 0) continue;
      const double* row = lookup.at(static_cast<std::size_t>(c), k);
      for (std::size_t f = 0; f < s.filters; ++f) z[f] += row[f];
    }
  }

  // relu then max over time; the first maximizing window wins ties.
  std::vector<double> h(s.filters);
  std::vector<std::size_t> argmax(s.filters, 0);
  for (std::size_t f = 0; f < s.filters; ++f) {
    double best = std::max(0.0, conv[f]);
    for (std::size_t t = 1; t < windows; ++t) {
      const double a = std::max(0.0, conv[t * s.filters + f]);
      if (a > best) {
        best = a;
        argmax[f] = t;
      }
    }
    h[f] = best;
  }

  std::vector<std::vector<double>> layer_in, gates, cands;
  for (std::size_t l = 0; l < s.layers; ++l) {
    const auto wt = model.slice(blocks[2 + 4 * l]);
    const auto bt = model.slice(blocks[3 + 4 * l]);
    const auto wh = model.slice(blocks[4 + 4 * l]);
    const auto bh = model.slice(blocks[5 + 4 * l]);
    std::vector<double> gate(s.filters), cand(s.filters), y(s.filters);
    for (std::size_t i = 0; i < s.filters; ++i) {
      double g = bt[i], c = bh[i];
      for (std::size_t j = 0; j < s.filters; ++j) {
        g += wt[i * s.filters + j] * h[j];
        c += wh[i * s.filters + j] * h[j];
      }
      gate[i] = sigmoid(g);
      cand[i] = c;
      y[i] = gate[i] * std::max(0.0, c) + (1.0 - gate[i]) * h[i];
    }
    if (cache) {
      layer_in.push_back(std::move(h));
      gates.push_back(std::move(gate));
      cands.push_back(std::move(cand));
    }
    h = std::move(y);
  }

  const auto wo = model.slice(blocks[blocks.size() - 2]);
  const auto bo = model.slice(blocks[blocks.size() - 1]);
  std::vector<double> logits(s.classes);
  for (std::size_t k = 0; k < s.classes; ++k) {
    double z = bo[k];
    for (std::size_t j = 0; j < s.filters; ++j) z += wo[k * s.filters + j] * h[j];
    logits[k] = z;
  }
  softmax(logits, probs);

  if (cache) {
    layer_in.push_back(std::move(h));
    cache->conv = std::move(conv);
    cache->argmax = std::move(argmax);
    cache->layer_in = std::move(layer_in);
    cache->gate = std::move(gates);
    cache->cand_pre = std::move(cands);
    cache->logits = std::move(logits);
  }
}

// Adds d(loss)/d(params) for one example into `grad` and d/d(lookup) into `dlookup`.
double accumulate_example(const ClassifierModel& model, const ConvLookup& lookup,
                          const EncodedExample& ex, std::vector<double>& grad,
                          std::vector<double>& dlookup) {
  const Shapes s = shapes_of(model);
  const auto& blocks = model.blocks();
  ForwardCache cache;
  std::vector<double> probs(s.classes);
  run_forward(model, lookup, ex.indices, probs, &cache);
  const double loss = cross_entropy(probs, ex.label);

  std::vector<double> dlogits(probs.begin(), probs.end());
  if (probs[static_cast<std::size_t>(ex.label)] < kProbabilityFloor) {
    std::fill(dlogits.begin(), dlogits.end(), 0.0);  // clamped region is flat
  } else {
    dlogits[static_cast<std::size_t>(ex.label)] -= 1.0;
  }

  const ParameterBlock& wo_b = blocks[blocks.size() - 2];
  const ParameterBlock& bo_b = blocks[blocks.size() - 1];
  const auto wo = model.slice(wo_b);
  const std::vector<double>& top = cache.layer_in.back();
  std::vector<double> dy(s.filters, 0.0);
  for (std::size_t k = 0; k < s.classes; ++k) {
    grad[bo_b.offset + k] += dlogits[k];
    for (std::size_t j = 0; j < s.filters; ++j) {
      grad[wo_b.offset + k * s.filters + j] += dlogits[k] * top[j];
      dy[j] += wo[k * s.filters + j] * dlogits[k];
    }
  }

  for (std::size_t l = s.layers; l-- > 0;) {
    const ParameterBlock& wt_b = blocks[2 + 4 * l];
    const ParameterBlock& bt_b = blocks[3 + 4 * l];
    const ParameterBlock& wh_b = blocks[4 + 4 * l];
    const ParameterBlock& bh_b = blocks[5 + 4 * l];
    const auto wt = model.slice(wt_b);
    const auto wh = model.slice(wh_b);
    const auto& x = cache.layer_in[l];
    const auto& t = cache.gate[l];
    const auto& c = cache.cand_pre[l];
    std::vector<double> dx(s.filters);
    std::vector<double> dg(s.filters), dc(s.filters);
    for (std::size_t i = 0; i < s.filters; ++i) {
      const double hval = std::max(0.0, c[i]);
      dx[i] = dy[i] * (1.0 - t[i]);
      dg[i] = dy[i] * (hval - x[i]) * t[i] * (1.0 - t[i]);
      dc[i] = c[i] > 0 ? dy[i] * t[i] : 0.0;
    }
    for (std::size_t i = 0; i < s.filters; ++i) {
      grad[bt_b.offset + i] += dg[i];
      grad[bh_b.offset + i] += dc[i];
      for (std::size_t j = 0; j < s.filters; ++j) {
        grad[wt_b.offset + i * s.filters + j] += dg[i] * x[j];
        grad[wh_b.offset + i * s.filters + j] += dc[i] * x[j];
        dx[j] += wt[i * s.filters + j] * dg[i] + wh[i * s.filters + j] * dc[i];
      }
    }
    dy = std::move(dx);
  }

  // Max-pool routes each filter's gradient to its argmax window; ReLU gates it.
  const ParameterBlock& cb_b = blocks[1];
  for (std::size_t f = 0; f < s.filters; ++f) {
    const std::size_t t = cache.argmax[f];
    if (!(cache.conv[t * s.filters + f] > 0)) continue;
    const double dz = dy[f];
    grad[cb_b.offset + f] += dz;
    for (std::size_t k = 0; k < s.width; ++k) {
      const std::int32_t ch = ex.indices[t + k];
      if (ch < 0) continue;
      dlookup[(static_cast<std::size_t>(ch) * s.width + k) * s.filters + f] += dz;
    }
  }
  return loss;
}

// Chain rule from the lookup table back into the convolution kernel.
void fold_lookup_gradient(const ClassifierModel& model, const InputEncoding& encoding,
                          const std::vector<double>& dlookup, std::vector<double>& grad) {
  const Shapes s = shapes_of(model);
  const std::size_t chars = encoding.charset().size();
  const std::size_t row = s.width * s.input;
  const std::size_t base = model.blocks()[0].offset;
  for (std::size_t c = 0; c < chars; ++c) {
    for (std::size_t k = 0; k < s.width; ++k) {
      const double* dl = dlookup.data() + (c * s.width + k) * s.filters;
      if (encoding.is_one_hot()) {
        for (std::size_t f = 0; f < s.filters; ++f) grad[base + f * row + k * s.input + c] += dl[f];
      } else {
        const auto e = encoding.table()->row(c);
        for (std::size_t f = 0; f < s.filters; ++f) {
          if (dl[f] == 0) continue;
          double* g = grad.data() + base + f * row + k * s.input;
          for (std::size_t j = 0; j < s.input; ++j) g[j] += dl[f] * e[j];
        }
      }
    }
  }
}

Gradient batch_gradient(const ClassifierModel& model, const InputEncoding& encoding,
                        const ConvLookup& lookup, std::span<const EncodedExample* const> batch) {
  if (batch.empty()) throw InvalidArgument("backward needs a nonempty batch");
  const Shapes s = shapes_of(model);
  Gradient g;
  g.values.assign(model.parameters().size(), 0.0);
  std::vector<double> dlookup(encoding.charset().size() * s.width * s.filters, 0.0);
  double loss = 0;
  for (const EncodedExample* ex : batch) loss += accumulate_example(model, lookup, *ex, g.values, dlookup);
  fold_lookup_gradient(model, encoding, dlookup, g.values);
  const double inv = 1.0 / static_cast<double>(batch.size());
  for (double& v : g.values) v *= inv;
  g.mean_loss = loss * inv;
  return g;
}

void check_encoding(const ClassifierModel& model, const InputEncoding& encoding) {
  if (model.input_width() != encoding.width()) {
    throw DimensionMismatch(model.input_width(), encoding.width());
  }
}

int argmax_class(std::span<const double> probs) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < probs.size(); ++k) {
    if (probs[k] > probs[best]) best = k;
  }
  return static_cast<int>(best);
}

}  // namespace

InputEncoding InputEncoding::one_hot(CharSet charset) { return InputEncoding(std::move(charset), nullptr); }

InputEncoding InputEncoding::visual(std::shared_ptr<const VisualEmbeddingTable> table) {
  if (!table) throw InvalidArgument("visual encoding needs a table");
  CharSet cs = table->charset();
  return InputEncoding(std::move(cs), std::move(table));
}

std::size_t InputEncoding::width() const noexcept {
  return table_ ? table_->dimension() : charset_.size();
}

std::vector<std::int32_t> InputEncoding::encode(std::string_view utf8) const {
  std::vector<std::int32_t> out;
  for (char32_t c : decode_utf8(utf8)) {
    auto idx = charset_.index_of(c);
    out.push_back(idx ? static_cast<std::int32_t>(*idx) : -1);
  }
  return out;
}

void ClassifierConfig::validate() const {
  if (conv_width < 1 || conv_filters < 1 || classes < 2 || batch_size < 1 || epochs < 1) {
    throw InvalidArgument("classifier sizes must be positive (and classes >= 2)");
  }
  if (!(learning_rate >= 0) || !std::isfinite(learning_rate)) {
    throw InvalidArgument("learning rate must be a finite non-negative number");
  }
  if (!(momentum >= 0 && momentum < 1)) throw InvalidArgument("momentum must lie in [0, 1)");
}

ClassifierModel::ClassifierModel(ClassifierConfig config, std::size_t input_width)
    : config_(std::move(config)), input_width_(input_width) {
  config_.validate();
  if (input_width_ == 0) throw InvalidArgument("input width must be positive");
  const std::size_t f = config_.conv_filters;
  std::size_t offset = 0;
  auto add = [&](std::string name, std::size_t rows, std::size_t cols) {
    blocks_.push_back({std::move(name), offset, rows, cols});
    offset += rows * cols;
  };
  add("conv.weight", f, config_.conv_width * input_width_);
  add("conv.bias", 1, f);
  for (std::size_t l = 0; l < config_.highway_layers; ++l) {
    const std::string p = "highway" + std::to_string(l);
    add(p + ".gate.weight", f, f);
    add(p + ".gate.bias", 1, f);
    add(p + ".candidate.weight", f, f);
    add(p + ".candidate.bias", 1, f);
  }
  add("output.weight", config_.classes, f);
  add("output.bias", 1, config_.classes);
  params_.assign(offset, 0.0);
}

ClassifierModel ClassifierModel::initialized(const ClassifierConfig& config, std::size_t input_width) {
  ClassifierModel m(config, input_width);
  Rng rng(config.seed);
  for (const auto& b : m.blocks_) {
    if (b.rows == 1) continue;  // biases start at zero
    const double fan_in = static_cast<double>(b.cols);
    const double fan_out = static_cast<double>(b.rows);
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    for (double& w : m.slice(b)) w = rng.uniform(-limit, limit);
  }
  return m;
}

const ParameterBlock& ClassifierModel::block(std::string_view name) const {
  for (const auto& b : blocks_) {
    if (b.name == name) return b;
  }
  throw InvalidArgument("no parameter block named '" + std::string(name) + "'");
}

std::vector<EncodedExample> encode_dataset(const InputEncoding& encoding,
                                           const std::vector<LabeledSentence>& sentences) {
  std::vector<EncodedExample> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back({encoding.encode(s.text), static_cast<int>(s.label)});
  return out;
}

ForwardResult forward(const ClassifierModel& model, const InputEncoding& encoding,
                      std::span<const std::int32_t> indices) {
  check_encoding(model, encoding);
  const ConvLookup lookup(model, encoding);
  ForwardResult r;
  r.probs.assign(model.config().classes, 0.0);
  run_forward(model, lookup, indices, r.probs, &r.cache);
  return r;
}

double cross_entropy(std::span<const double> probs, int label) {
  if (label < 0 || static_cast<std::size_t>(label) >= probs.size()) {
    throw InvalidArgument("label out of range");
  }
  return -std::log(std::max(probs[static_cast<std::size_t>(label)], kProbabilityFloor));
}

Gradient backward(const ClassifierModel& model, const InputEncoding& encoding,
                  std::span<const EncodedExample> batch) {
  check_encoding(model, encoding);
  const ConvLookup lookup(model, encoding);
  std::vector<const EncodedExample*> ptrs;
  ptrs.reserve(batch.size());
  for (const auto& ex : batch) ptrs.push_back(&ex);
  return batch_gradient(model, encoding, lookup, ptrs);
}

int predict(const ClassifierModel& model, const InputEncoding& encoding,
            std::span<const std::int32_t> indices) {
  return argmax_class(forward(model, encoding, indices).probs);
}

double evaluate(const ClassifierModel& model, const InputEncoding& encoding,
                std::span<const EncodedExample> data) {
  check_encoding(model, encoding);
  if (data.empty()) throw InvalidArgument("cannot evaluate on an empty dataset");
  const ConvLookup lookup(model, encoding);
  constexpr std::size_t kChunk = 512;
  const std::size_t chunks = (data.size() + kChunk - 1) / kChunk;
  std::vector<std::size_t> correct(chunks, 0);
  parallel_for(chunks, [&](std::size_t c) {
    std::vector<double> probs(model.config().classes);
    const std::size_t end = std::min(data.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      run_forward(model, lookup, data[i].indices, probs, nullptr);
      correct[c] += argmax_class(probs) == data[i].label;
    }
  });
  const std::size_t total = std::accumulate(correct.begin(), correct.end(), std::size_t{0});
  return static_cast<double>(total) / static_cast<double>(data.size());
}

double evaluate(const ClassifierModel& model, const InputEncoding& encoding,
                const std::vector<LabeledSentence>& data) {
  return evaluate(model, encoding, encode_dataset(encoding, data));
}

TrainResult train(const ClassifierConfig& config, const InputEncoding& encoding,
                  const std::vector<LabeledSentence>& train_set,
                  const std::vector<LabeledSentence>& val_set) {
  config.validate();
  if (train_set.empty() || val_set.empty()) throw InvalidArgument("training needs nonempty train and val sets");
  const auto train_data = encode_dataset(encoding, train_set);
  const auto val_data = encode_dataset(encoding, val_set);
  for (const auto* set : {&train_data, &val_data}) {
    for (const auto& ex : *set) {
      if (ex.indices.size() < config.conv_width) throw SequenceTooShort(ex.indices.size(), config.conv_width);
    }
  }

  TrainResult result{ClassifierModel::initialized(config, encoding.width()), {}};
  ClassifierModel& model = result.model;
  std::vector<double> velocity(model.parameters().size(), 0.0);
  Rng shuffle_rng(stage_seed(config.seed, "shuffle"));
  std::vector<std::size_t> order(train_data.size());
  std::vector<const EncodedExample*> batch;

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[shuffle_rng.below(i)]);

    double loss_sum = 0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      batch.clear();
      for (std::size_t i = start; i < end; ++i) batch.push_back(&train_data[order[i]]);
      const ConvLookup lookup(model, encoding);
      const Gradient g = batch_gradient(model, encoding, lookup, batch);
      if (!std::isfinite(g.mean_loss)) {
        throw TrainingDiverged("non-finite loss at epoch " + std::to_string(epoch));
      }
      auto params = model.parameters();
      for (std::size_t k = 0; k < params.size(); ++k) {
        velocity[k] = config.momentum * velocity[k] - config.learning_rate * g.values[k];
        params[k] += velocity[k];
      }
      loss_sum += g.mean_loss;
      ++batches;
    }
    for (double p : model.parameters()) {
      if (!std::isfinite(p)) throw TrainingDiverged("non-finite parameter at epoch " + std::to_string(epoch));
    }
    EpochMetrics m;
    m.epoch = epoch;
    m.train_loss = loss_sum / static_cast<double>(batches);
    m.train_accuracy = evaluate(model, encoding, train_data);
    m.val_accuracy = evaluate(model, encoding, val_data);
    result.epochs.push_back(m);
  }
  return result;
}

std::string format_metrics(const std::vector<EpochMetrics>& epochs) {
  std::string out = "epoch\ttrain_loss\ttrain_acc\tval_acc\n";
  for (const auto& e : epochs) {
    out += std::to_string(e.epoch) + "\t" + format_real(e.train_loss) + "\t" +
           format_real(e.train_accuracy) + "\t" + format_real(e.val_accuracy) + "\n";
  }
  return out;
}

std::string format_checkpoint(const ClassifierModel& model, const InputEncoding& encoding) {
  check_encoding(model, encoding);
  const auto& c = model.config();
  std::string out = "#model\tversion=1\tencoding=" + std::string(encoding.name()) +
                    "\tinput_width=" + std::to_string(model.input_width()) +
                    "\tconv_width=" + std::to_string(c.conv_width) +
                    "\tconv_filters=" + std::to_string(c.conv_filters) +
                    "\thighway_layers=" + std::to_string(c.highway_layers) +
                    "\tclasses=" + std::to_string(c.classes) +
                    "\tlearning_rate=" + format_real(c.learning_rate) +
                    "\tmomentum=" + format_real(c.momentum) +
                    "\tbatch_size=" + std::to_string(c.batch_size) +
                    "\tepochs=" + std::to_string(c.epochs) + "\tseed=" + std::to_string(c.seed) + "\n";
  out += "charset";
  for (char32_t cp : encoding.charset()) out += "\t" + format_codepoint(cp);
  out += "\n";
  for (const auto& b : model.blocks()) {
    out += "@" + b.name + "\t" + std::to_string(b.rows) + "\t" + std::to_string(b.cols) + "\n";
    const auto values = model.slice(b);
    for (std::size_t r = 0; r < b.rows; ++r) {
      for (std::size_t k = 0; k < b.cols; ++k) {
        if (k) out += '\t';
        out += format_real(values[r * b.cols + k]);
      }
      out += '\n';
    }
  }
  return out;
}

Checkpoint parse_checkpoint(std::string_view text, const std::string& source) {
  const auto lines = split_lines(text);
  if (lines.size() < 2) throw FormatError(source, 1, "checkpoint too short");
  if (!text.empty() && text.back() != '\n') {
    throw FormatError(source, lines.size(), "line is not newline-terminated (truncated file?)");
  }
  const auto header = split(lines[0], '\t');
  if (header.empty() || header[0] != "#model") throw FormatError(source, 1, "expected '#model' header");
  auto get = [&](std::string_view key) -> std::string_view {
    for (std::size_t i = 1; i < header.size(); ++i) {
      const auto f = header[i];
      if (f.size() > key.size() && f.substr(0, key.size()) == key && f[key.size()] == '=') {
        return f.substr(key.size() + 1);
      }
    }
    throw FormatError(source, 1, "missing header field '" + std::string(key) + "'");
  };
  auto get_uint = [&](std::string_view key) {
    auto v = parse_uint(get(key));
    if (!v) throw FormatError(source, 1, "bad value for '" + std::string(key) + "'");
    return *v;
  };
  auto get_real = [&](std::string_view key) {
    auto v = parse_real(get(key));
    if (!v) throw FormatError(source, 1, "bad value for '" + std::string(key) + "'");
    return *v;
  };
  if (get("version") != "1") throw FormatError(source, 1, "unsupported checkpoint version");
  const std::string encoding(get("encoding"));
  if (encoding != "onehot" && encoding != "ve") throw FormatError(source, 1, "unknown encoding");

  ClassifierConfig config;
  config.conv_width = get_uint("conv_width");
  config.conv_filters = get_uint("conv_filters");
  config.highway_layers = get_uint("highway_layers");
  config.classes = get_uint("classes");
  config.learning_rate = get_real("learning_rate");
  config.momentum = get_real("momentum");
  config.batch_size = get_uint("batch_size");
  config.epochs = get_uint("epochs");
  config.seed = get_uint("seed");
  const std::size_t input_width = get_uint("input_width");

  const auto cs_fields = split(lines[1], '\t');
  if (cs_fields.empty() || cs_fields[0] != "charset") throw FormatError(source, 2, "expected charset line");
  std::vector<char32_t> cps;
  for (std::size_t i = 1; i < cs_fields.size(); ++i) {
    auto cp = parse_codepoint(cs_fields[i]);
    if (!cp) throw FormatError(source, 2, "bad codepoint '" + std::string(cs_fields[i]) + "'");
    cps.push_back(*cp);
  }

  std::optional<ClassifierModel> model;
  std::optional<CharSet> charset;
  try {
    model.emplace(config, input_width);
    charset.emplace(std::move(cps));
  } catch (const InvalidArgument& e) {
    throw FormatError(source, 1, e.what());
  }

  std::size_t ln = 2;
  for (const auto& b : model->blocks()) {
    if (ln >= lines.size()) throw FormatError(source, ln, "missing block '" + b.name + "'");
    const auto head = split(lines[ln], '\t');
    if (head.size() != 3 || head[0] != "@" + b.name || parse_uint(head[1]) != b.rows ||
        parse_uint(head[2]) != b.cols) {
      throw FormatError(source, ln + 1, "expected block header '@" + b.name + "'");
    }
    ++ln;
    auto values = model->slice(b);
    for (std::size_t r = 0; r < b.rows; ++r, ++ln) {
      if (ln >= lines.size()) throw FormatError(source, ln, "block '" + b.name + "' truncated");
      const auto fields = split(lines[ln], '\t');
      if (fields.size() != b.cols) {
        throw FormatError(source, ln + 1, "expected " + std::to_string(b.cols) + " values");
      }
      for (std::size_t k = 0; k < b.cols; ++k) {
        auto v = parse_real(fields[k]);
        if (!v) throw FormatError(source, ln + 1, "bad number '" + std::string(fields[k]) + "'");
        values[r * b.cols + k] = *v;
      }
    }
  }
  if (ln != lines.size()) throw FormatError(source, ln + 1, "unexpected trailing content");
  return {std::move(*model), encoding, std::move(*charset)};
}

void save_checkpoint(const ClassifierModel& model, const InputEncoding& encoding,
                     const std::filesystem::path& path) {
  write_file(path, format_checkpoint(model, encoding));
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  return parse_checkpoint(read_file(path), path.string());
}

}  // namespace glyphembed
