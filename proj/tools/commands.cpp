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

#include "commands.hpp"

#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "glyphembed/charset.hpp"
#include "glyphembed/embedding.hpp"
#include "glyphembed/error.hpp"
#include "glyphembed/experiment.hpp"
#include "glyphembed/model.hpp"
#include "glyphembed/noise.hpp"
#include "glyphembed/pca.hpp"
#include "glyphembed/raster.hpp"
#include "glyphembed/synthgen.hpp"
#include "glyphembed/text_format.hpp"

namespace glyphembed::cli {

namespace fs = std::filesystem;

namespace {

fs::path default_font(const std::string& file) {
  if (const char* env = std::getenv("GLYPHEMBED_FONT_DIR"); env && *env) {
    if (fs::exists(fs::path(env) / file)) return fs::path(env) / file;
  }
  for (const char* dir : {GLYPHEMBED_SOURCE_FONT_DIR, GLYPHEMBED_INSTALL_FONT_DIR}) {
    if (fs::exists(fs::path(dir) / file)) return fs::path(dir) / file;
  }
  return fs::path(GLYPHEMBED_SOURCE_FONT_DIR) / file;
}

CharSet charset_from(const std::string& path) {
  return path.empty() ? CharSet::printable_ascii() : load_charset(path);
}

fs::path prepare_out(const std::string& dir) {
  if (dir.empty()) throw InvalidArgument("--out is required");
  const fs::path p(dir);
  if (fs::exists(p) && !fs::is_directory(p)) {
    throw InvalidArgument("output path '" + dir + "' exists and is not a directory");
  }
  fs::create_directories(p);
  return p;
}

// Section header names the subcommand path so `glyphembed --config <file>` replays the run.
void write_snapshot(const CLI::App& sub, const fs::path& out) {
  std::string section = sub.get_name();
  for (const CLI::App* p = sub.get_parent(); p && p->get_parent(); p = p->get_parent()) {
    section = p->get_name() + "." + section;
  }
  write_file(out / "config.toml", "[" + section + "]\n" + sub.config_to_str(true, false));
}

std::string font_stem(const std::string& path) { return fs::path(path).stem().string(); }

char32_t parse_char_arg(const std::string& s) {
  if (auto cp = parse_codepoint(s)) return *cp;
  const std::u32string u = decode_utf8(s);
  if (u.size() != 1) throw InvalidArgument("expected one character or U+XXXX, got '" + s + "'");
  return u[0];
}

std::u32string alphabet_from(const std::string& path) {
  if (path.empty()) return U"abcdefghijklmnopqrstuvwxyz";
  return make_alphabet(read_file(path));
}

void add_classifier_options(CLI::App* sub, ClassifierConfig& c) {
  sub->add_option("--conv-width", c.conv_width, "Convolution window width (characters)")->group("Classifier");
  sub->add_option("--filters", c.conv_filters, "Number of convolution filters")->group("Classifier");
  sub->add_option("--highway", c.highway_layers, "Number of highway layers")->group("Classifier");
  sub->add_option("--lr", c.learning_rate, "SGD learning rate")->group("Classifier");
  sub->add_option("--momentum", c.momentum, "SGD momentum")->group("Classifier");
  sub->add_option("--batch", c.batch_size, "Mini-batch size")->group("Classifier");
  sub->add_option("--epochs", c.epochs, "Training epochs")->group("Classifier");
}

std::shared_ptr<const VisualEmbeddingTable> table_from(const std::string& path) {
  if (path.empty()) throw InvalidArgument("--table is required for the visual encoding");
  return std::make_shared<const VisualEmbeddingTable>(load_table(path));
}

// Too-short sequences cannot be scored and count as errors.
std::pair<double, std::size_t> score(const ClassifierModel& model, const InputEncoding& enc,
                                     const std::vector<LabeledSentence>& data) {
  auto encoded = encode_dataset(enc, data);
  const std::size_t total = encoded.size();
  std::erase_if(encoded, [&](const EncodedExample& e) { return e.indices.size() < model.config().conv_width; });
  if (total == 0) throw InvalidArgument("dataset is empty");
  const std::size_t skipped = total - encoded.size();
  const double acc = encoded.empty() ? 0.0 : evaluate(model, enc, encoded);
  return {acc * static_cast<double>(encoded.size()) / static_cast<double>(total), skipped};
}

// ve build / inspect / neighbors / layout

struct VeBuildOptions {
  std::string font = default_font("DejaVuSerif.ttf").string();
  std::string font_name;
  std::string charset;
  std::size_t width = 15;
  std::size_t height = 15;
  std::size_t d = 0;
  double threshold = 0.95;
  bool dump_glyphs = false;
  bool strict = false;
  std::string out;
};

void run_ve_build(const CLI::App& sub, const VeBuildOptions& o) {
  const CharSet cs = charset_from(o.charset);
  const std::string name = o.font_name.empty() ? font_stem(o.font) : o.font_name;
  const FontSpec spec = make_font_spec(load_font(o.font), name, cs, o.width, o.height);
  const DimensionSelector selector =
      o.d > 0 ? DimensionSelector(FixedDimension{o.d}) : DimensionSelector(VarianceThreshold{o.threshold});
  const auto policy = o.strict ? MissingGlyphPolicy::kThrow : MissingGlyphPolicy::kNotdef;
  const EmbeddingBuild build = build_embedding(cs, spec, selector, policy);

  const fs::path out = prepare_out(o.out);
  save_table(build.table, out / "embedding.tsv");
  write_file(out / "variance.tsv", format_variance_report(build.pca));
  if (o.dump_glyphs) {
    fs::create_directories(out / "glyphs");
    for (char32_t c : cs) {
      write_file(out / "glyphs" / (format_codepoint(c) + ".pgm"), to_pgm(rasterize_char(c, spec, policy)));
    }
  }
  write_snapshot(sub, out);
  const auto& m = build.table.metadata();
  std::cout << "font=" << m.font_name << " ppem=" << format_real(spec.point_size) << " d="
            << build.table.dimension() << " ratio=" << format_real(m.variance_ratio)
            << (m.clamped ? " (clamped)" : "") << " -> " << (out / "embedding.tsv").string() << "\n";
}

void run_ve_inspect(const std::string& table_path, const std::string& ch) {
  const VisualEmbeddingTable t = load_table(table_path);
  const auto& m = t.metadata();
  std::size_t zero = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    bool all_zero = true;
    for (double v : t.row(i)) all_zero = all_zero && v == 0;
    zero += all_zero;
  }
  std::cout << "font\t" << m.font_name << "\nwidth\t" << m.width << "\nheight\t" << m.height << "\nchars\t"
            << t.size() << "\nd\t" << t.dimension() << "\nvariance_ratio\t" << format_real(m.variance_ratio)
            << "\nzero_rows\t" << zero << "\n";
  if (!ch.empty()) {
    const char32_t c = parse_char_arg(ch);
    std::cout << format_codepoint(c);
    for (double v : t.vector_for(c)) std::cout << "\t" << format_real(v);
    std::cout << "\n";
  }
}

struct NeighborOptions {
  std::string table;
  std::string ch = "O";
  std::size_t k = 5;
  std::string out;
};

void run_ve_neighbors(const CLI::App& sub, const NeighborOptions& o) {
  const VisualEmbeddingTable t = load_table(o.table);
  const std::string report = format_neighbors(nearest_neighbors(t, parse_char_arg(o.ch), o.k));
  std::cout << report;
  if (!o.out.empty()) {
    const fs::path out = prepare_out(o.out);
    write_file(out / "neighbors.tsv", report);
    write_snapshot(sub, out);
  }
}

void run_ve_layout(const CLI::App& sub, const std::string& table, const std::string& out_dir) {
  const VisualEmbeddingTable t = load_table(table);
  const std::string report = format_layout(layout_2d(t));
  const fs::path out = prepare_out(out_dir);
  write_file(out / "layout.tsv", report);
  write_snapshot(sub, out);
  std::cout << t.size() << " points -> " << (out / "layout.tsv").string() << "\n";
}

// noise apply

struct NoiseOptions {
  std::string kind = "all";
  double p = 0.1;
  std::uint64_t seed = 0;
  std::string alphabet;
  std::string lexicon;
  bool jsonl = false;
  std::string in;
  std::string out;
};

std::vector<std::string> noise_lines(const NoiseOptions& o, const std::vector<std::string>& lines) {
  if (o.kind == "natural") {
    if (o.lexicon.empty()) throw InvalidArgument("--lexicon is required for natural noise");
    std::size_t replaced = 0;
    auto out = natural_noise_corpus(lines, load_lexicon(o.lexicon), o.seed, &replaced);
    std::cerr << "replaced=" << replaced << "\n";
    return out;
  }
  const auto kind = parse_noise_kind(o.kind);
  if (!kind) throw InvalidArgument("unknown noise kind '" + o.kind + "'");
  const NoiseSpec spec{*kind, o.p, alphabet_from(o.alphabet), o.seed};
  NoiseStats stats;
  auto out = noise_corpus(lines, spec, &stats);
  std::cerr << "eligible=" << stats.eligible << " edits=" << stats.edits << "\n";
  return out;
}

void run_noise_apply(const NoiseOptions& o) {
  const std::string text = read_file(o.in);
  std::string result;
  if (o.jsonl) {
    std::vector<nlohmann::ordered_json> records;
    std::vector<std::string> texts;
    std::size_t line_no = 0;
    for (std::string_view line : split_lines(text)) {
      ++line_no;
      if (trim(line).empty()) continue;
      auto j = nlohmann::ordered_json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object() || !j.contains("text") || !j["text"].is_string()) {
        throw FormatError(o.in, line_no, "expected a JSON object with a string 'text' field");
      }
      texts.push_back(j["text"].get<std::string>());
      records.push_back(std::move(j));
    }
    const auto noised = noise_lines(o, texts);
    for (std::size_t i = 0; i < records.size(); ++i) {
      records[i]["text"] = noised[i];
      result += records[i].dump() + "\n";
    }
  } else {
    std::vector<std::string> lines;
    for (std::string_view line : split_lines(text)) lines.emplace_back(line);
    for (const auto& line : noise_lines(o, lines)) result += line + "\n";
  }
  write_file(o.out, result);
}

// synth gen

struct SynthOptions {
  std::uint64_t seed = 0;
  std::size_t train = 18000;
  std::size_t val = 6000;
  std::size_t test = 6000;
  double mix_rate = kDefaultMixRate;
  std::size_t words_per_class = 15;
  std::size_t word_length = 3;
  std::string out;
};

DatasetConfig dataset_config(const SynthOptions& o) {
  DatasetConfig c;
  c.seed = o.seed;
  c.train = o.train;
  c.val = o.val;
  c.test = o.test;
  c.mix_rate = o.mix_rate;
  c.vocab.words_per_class = o.words_per_class;
  c.vocab.word_length = o.word_length;
  return c;
}

void add_synth_options(CLI::App* sub, SynthOptions& o) {
  sub->add_option("--seed", o.seed, "Global seed");
  sub->add_option("--train", o.train, "Training sentences")->group("Data");
  sub->add_option("--val", o.val, "Validation sentences")->group("Data");
  sub->add_option("--test", o.test, "Sentences per test condition")->group("Data");
  sub->add_option("--mix-rate", o.mix_rate, "Insertion rate of the mixed test")->group("Data");
  sub->add_option("--words-per-class", o.words_per_class, "Vocabulary words per polarity")->group("Data");
  sub->add_option("--word-length", o.word_length, "Letters per word")->group("Data");
}

void run_synth_gen(const CLI::App& sub, const SynthOptions& o) {
  const SyntheticDataset ds = generate_dataset(dataset_config(o));
  const fs::path out = prepare_out(o.out);
  write_dataset(ds, out);
  write_snapshot(sub, out);
  std::cout << "train=" << ds.train.size() << " val=" << ds.val.size() << " test=" << ds.test_clean.size()
            << "x3 -> " << out.string() << "\n";
}

// train / eval

struct TrainOptions {
  std::string data;
  std::string encoding = "ve";
  std::string table;
  std::string charset;
  ClassifierConfig classifier;
  std::string out;
};

InputEncoding make_encoding(const std::string& kind, const std::string& table, const std::string& charset) {
  if (kind == "onehot") return InputEncoding::one_hot(charset_from(charset));
  if (kind == "ve") return InputEncoding::visual(table_from(table));
  throw InvalidArgument("unknown encoding '" + kind + "' (expected onehot or ve)");
}

void run_train(const CLI::App& sub, const TrainOptions& o) {
  if (o.data.empty()) throw InvalidArgument("--data is required");
  const InputEncoding enc = make_encoding(o.encoding, o.table, o.charset);
  const auto train_set = load_jsonl(fs::path(o.data) / "train.jsonl");
  const auto val_set = load_jsonl(fs::path(o.data) / "val.jsonl");
  const TrainResult r = train(o.classifier, enc, train_set, val_set);

  const fs::path out = prepare_out(o.out);
  save_checkpoint(r.model, enc, out / "model.ckpt");
  write_file(out / "metrics.tsv", format_metrics(r.epochs));
  if (!enc.is_one_hot()) save_table(*enc.table(), out / "embedding.tsv");
  write_snapshot(sub, out);
  const auto& last = r.epochs.back();
  std::cout << "epoch=" << last.epoch << " train_loss=" << format_real(last.train_loss)
            << " train_acc=" << format_real(last.train_accuracy) << " val_acc=" << format_real(last.val_accuracy)
            << "\n";
}

struct EvalOptions {
  std::string model;
  std::string table;
  std::vector<std::string> data;
};

void run_eval(const EvalOptions& o) {
  Checkpoint ck = load_checkpoint(o.model);
  std::string table = o.table;
  if (table.empty() && ck.encoding == "ve" && fs::exists(fs::path(o.model).parent_path() / "embedding.tsv")) {
    table = (fs::path(o.model).parent_path() / "embedding.tsv").string();
  }
  const InputEncoding enc = ck.encoding == "onehot" ? InputEncoding::one_hot(ck.charset)
                                                    : InputEncoding::visual(table_from(table));
  if (enc.charset() != ck.charset) throw InvalidArgument("embedding charset does not match the checkpoint");
  if (enc.width() != ck.model.input_width()) throw DimensionMismatch(ck.model.input_width(), enc.width());
  std::cout << "file\taccuracy\tcount\tskipped\n";
  for (const auto& path : o.data) {
    const auto data = load_jsonl(path);
    const auto [acc, skipped] = score(ck.model, enc, data);
    std::cout << path << "\t" << format_real(acc) << "\t" << data.size() << "\t" << skipped << "\n";
  }
}

// experiment

struct ExperimentOptions {
  SynthOptions data;
  std::string data_dir;
  std::vector<std::string> fonts = {"DejaVuSerif=" + default_font("DejaVuSerif.ttf").string(),
                                    "DejaVuSans=" + default_font("DejaVuSans.ttf").string()};
  std::vector<std::size_t> dims = {20, 50, 80};
  std::string charset;
  bool no_onehot = false;
  bool sweep = false;
  double base_p = 0.1;
  std::vector<std::string> kinds = {"delete", "insert", "replace", "swap", "all"};
  std::string alphabet;
  ClassifierConfig classifier;
};

FontChoice parse_font_arg(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos) return {font_stem(s), s};
  return {s.substr(0, eq), s.substr(eq + 1)};
}

void run_experiment_cmd(const CLI::App& sub, const ExperimentOptions& o) {
  ExperimentConfig ec;
  ec.charset = charset_from(o.charset);
  for (const auto& f : o.fonts) {
    ec.fonts.push_back(parse_font_arg(f));
    if (!fs::exists(ec.fonts.back().path)) throw IoError("cannot open font '" + ec.fonts.back().path.string() + "'");
  }
  ec.dims = o.dims;
  ec.include_one_hot = !o.no_onehot;
  ec.classifier = o.classifier;
  ec.seed = o.data.seed;
  ec.sweep = o.sweep;
  ec.base_p = o.base_p;
  ec.kinds.clear();
  for (const auto& k : o.kinds) {
    const auto kind = parse_noise_kind(k);
    if (!kind) throw InvalidArgument("unknown noise kind '" + k + "'");
    ec.kinds.push_back(*kind);
  }
  ec.noise_alphabet = alphabet_from(o.alphabet);
  ec.validate();

  SyntheticDataset ds;
  if (o.data_dir.empty()) {
    ds = generate_dataset(dataset_config(o.data));
  } else {
    const fs::path dir(o.data_dir);
    ds.train = load_jsonl(dir / "train.jsonl");
    ds.val = load_jsonl(dir / "val.jsonl");
    ds.test_clean = load_jsonl(dir / "test_clean.jsonl");
    ds.test_mixed = load_jsonl(dir / "test_mixed.jsonl");
    ds.test_replaced = load_jsonl(dir / "test_replaced.jsonl");
  }
  const ExperimentResult r = run_experiment(ec, ds);

  const fs::path out = prepare_out(o.data.out);
  const std::string grid = format_grid_tsv(r.grid);
  write_file(out / "results.tsv", grid);
  write_file(out / "results.txt", align_tsv(grid));
  std::cout << align_tsv(grid);
  if (ec.sweep) {
    const std::string sweep = format_sweep_tsv(r.sweep, ec.base_p);
    write_file(out / "sweep.tsv", sweep);
    write_file(out / "sweep.txt", align_tsv(sweep));
    std::cout << "\n" << align_tsv(sweep);
  }
  write_snapshot(sub, out);
}

}  // namespace

void add_ve_commands(CLI::App& app) {
  CLI::App* ve = app.add_subcommand("ve", "Build and inspect visual embedding tables");
  ve->require_subcommand(1);

  auto b = std::make_shared<VeBuildOptions>();
  CLI::App* build = ve->add_subcommand("build", "Rasterize a charset and fit the PCA embedding");
  build->add_option("--font", b->font, "TrueType font file");
  build->add_option("--font-name", b->font_name, "Name recorded in the table (default: file stem)");
  build->add_option("--charset", b->charset, "Charset file of U+XXXX lines (default: printable ASCII)");
  build->add_option("--width", b->width, "Glyph image width m");
  build->add_option("--height", b->height, "Glyph image height n");
  build->add_option("--d", b->d, "Fixed dimension; 0 selects by --threshold");
  build->add_option("--threshold", b->threshold, "Explained-variance threshold used when --d is 0");
  build->add_flag("--dump-glyphs", b->dump_glyphs, "Also write every glyph as PGM under glyphs/");
  build->add_flag("--strict-glyphs", b->strict, "Fail on glyphs missing from the font");
  build->add_option("--out", b->out, "Output directory")->required();
  build->callback([build, b] { run_ve_build(*build, *b); });

  auto table = std::make_shared<std::string>();
  auto ch = std::make_shared<std::string>();
  CLI::App* inspect = ve->add_subcommand("inspect", "Print table metadata");
  inspect->add_option("--table", *table, "Embedding table")->required();
  inspect->add_option("--char", *ch, "Also print this character's vector");
  inspect->callback([table, ch] { run_ve_inspect(*table, *ch); });

  auto n = std::make_shared<NeighborOptions>();
  CLI::App* nb = ve->add_subcommand("neighbors", "Top-k cosine neighbours of a character");
  nb->add_option("--table", n->table, "Embedding table")->required();
  nb->add_option("--char", n->ch, "Query character (literal or U+XXXX)");
  nb->add_option("--k", n->k, "Number of neighbours");
  nb->add_option("--out", n->out, "Also write neighbors.tsv into this directory");
  nb->callback([nb, n] { run_ve_neighbors(*nb, *n); });

  auto lt = std::make_shared<std::string>();
  auto lo = std::make_shared<std::string>();
  CLI::App* layout = ve->add_subcommand("layout", "2-D PCA layout of the table");
  layout->add_option("--table", *lt, "Embedding table")->required();
  layout->add_option("--out", *lo, "Output directory")->required();
  layout->callback([layout, lt, lo] { run_ve_layout(*layout, *lt, *lo); });
}

void add_noise_commands(CLI::App& app) {
  CLI::App* noise = app.add_subcommand("noise", "Character-level noise injection");
  noise->require_subcommand(1);
  auto o = std::make_shared<NoiseOptions>();
  CLI::App* apply = noise->add_subcommand("apply", "Perturb every line of a text (or JSONL) file");
  apply->add_option("--kind", o->kind, "delete, insert, replace, swap, all or natural")
      ->check(CLI::IsMember({"delete", "insert", "replace", "swap", "all", "natural"}));
  apply->add_option("--p", o->p, "Per-character edit probability");
  apply->add_option("--seed", o->seed, "Seed");
  apply->add_option("--alphabet", o->alphabet, "UTF-8 file whose characters form the draw pool (default: a-z)");
  apply->add_option("--lexicon", o->lexicon, "word<TAB>variant file for natural noise");
  apply->add_flag("--jsonl", o->jsonl, "Input is JSON Lines; perturb the 'text' field only");
  apply->add_option("in", o->in, "Input file")->required();
  apply->add_option("out", o->out, "Output file")->required();
  apply->callback([o] { run_noise_apply(*o); });
}

void add_synth_commands(CLI::App& app) {
  CLI::App* synth = app.add_subcommand("synth", "Synthetic polarity task");
  synth->require_subcommand(1);
  auto o = std::make_shared<SynthOptions>();
  CLI::App* gen = synth->add_subcommand("gen", "Generate train/val/test splits as JSON Lines");
  add_synth_options(gen, *o);
  gen->add_option("--out", o->out, "Output directory")->required();
  gen->callback([gen, o] { run_synth_gen(*gen, *o); });
}

void add_train_command(CLI::App& app) {
  auto o = std::make_shared<TrainOptions>();
  CLI::App* sub = app.add_subcommand("train", "Train the classifier on a generated dataset");
  sub->add_option("--data", o->data, "Dataset directory (train.jsonl, val.jsonl)")->required();
  sub->add_option("--encoding", o->encoding, "onehot or ve")->check(CLI::IsMember({"onehot", "ve"}));
  sub->add_option("--table", o->table, "Embedding table (ve encoding)");
  sub->add_option("--charset", o->charset, "Charset file for onehot (default: printable ASCII)");
  sub->add_option("--seed", o->classifier.seed, "Initialization and shuffling seed");
  add_classifier_options(sub, o->classifier);
  sub->add_option("--out", o->out, "Output directory")->required();
  sub->callback([sub, o] { run_train(*sub, *o); });
}

void add_eval_command(CLI::App& app) {
  auto o = std::make_shared<EvalOptions>();
  CLI::App* sub = app.add_subcommand("eval", "Accuracy of a checkpoint on JSONL datasets");
  sub->add_option("--model", o->model, "Checkpoint file")->required();
  sub->add_option("--table", o->table, "Embedding table (default: embedding.tsv next to the model)");
  sub->add_option("data", o->data, "JSONL files")->required();
  sub->callback([o] { run_eval(*o); });
}

void add_experiment_command(CLI::App& app) {
  auto o = std::make_shared<ExperimentOptions>();
  CLI::App* sub = app.add_subcommand("experiment", "One-hot vs visual embedding grid and noise sweep");
  add_synth_options(sub, o->data);
  sub->add_option("--data", o->data_dir, "Load splits from this directory instead of generating");
  sub->add_option("--font", o->fonts, "Fonts as name=path or path")->delimiter(',')->group("Grid");
  sub->add_option("--dims", o->dims, "Embedding dimensions")->delimiter(',')->group("Grid");
  sub->add_option("--charset", o->charset, "Charset file (default: printable ASCII)")->group("Grid");
  sub->add_flag("--no-onehot", o->no_onehot, "Skip the one-hot baseline")->group("Grid");
  sub->add_flag("--sweep", o->sweep, "Also run the noise-level sweep at p, 2p, 3p")->group("Sweep");
  sub->add_option("--base-p", o->base_p, "Sweep base probability p")->group("Sweep");
  sub->add_option("--kinds", o->kinds, "Sweep noise kinds")->delimiter(',')->group("Sweep");
  sub->add_option("--alphabet", o->alphabet, "Sweep draw pool file (default: a-z)")->group("Sweep");
  add_classifier_options(sub, o->classifier);
  sub->add_option("--out", o->data.out, "Output directory")->required();
  sub->callback([sub, o] { run_experiment_cmd(*sub, *o); });
}

}  // namespace glyphembed::cli
