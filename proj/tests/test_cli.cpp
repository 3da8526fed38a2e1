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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const fs::path& root() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / ("glyphembed_cli_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::string& args, int threads = 0) {
  static int counter = 0;
  const fs::path out = root() / ("stdout" + std::to_string(counter) + ".txt");
  const fs::path err = root() / ("stderr" + std::to_string(counter++) + ".txt");
  std::string cmd;
  if (threads > 0) cmd += "GLYPHEMBED_THREADS=" + std::to_string(threads) + " ";
  cmd += std::string(GLYPHEMBED_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::string p(const fs::path& x) { return "'" + x.string() + "'"; }

// Every regular file under dir, keyed by relative path.
std::map<std::string, std::string> tree(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), dir).string()] = slurp(e.path());
  }
  return files;
}

// Runs a command writing into <tag>_a, <tag>_b (single thread) and <tag>_c (four threads).
void expect_deterministic(const std::string& tag, const std::string& args) {
  const fs::path a = root() / (tag + "_a"), b = root() / (tag + "_b"), c = root() / (tag + "_c");
  const Result ra = run(args + " --out " + p(a), 1);
  ASSERT_EQ(ra.code, 0) << ra.err;
  const Result rb = run(args + " --out " + p(b), 1);
  ASSERT_EQ(rb.code, 0) << rb.err;
  const Result rc = run(args + " --out " + p(c), 4);
  ASSERT_EQ(rc.code, 0) << rc.err;
  auto strip = [](std::map<std::string, std::string> t) {
    t.erase("config.toml");  // names the output directory
    return t;
  };
  const auto ta = strip(tree(a));
  EXPECT_FALSE(ta.empty());
  EXPECT_EQ(ta, strip(tree(b))) << tag;
  EXPECT_EQ(ta, strip(tree(c))) << tag;
  // Progress lines name the output directory.
  auto scrub = [](std::string s, const fs::path& dir) {
    for (std::size_t at; (at = s.find(dir.string())) != std::string::npos;) s.replace(at, dir.string().size(), "OUT");
    return s;
  };
  EXPECT_EQ(scrub(ra.out, a), scrub(rb.out, b));
  EXPECT_EQ(scrub(ra.out, a), scrub(rc.out, c));
}

const fs::path& dataset() {
  static const fs::path dir = [] {
    const fs::path d = root() / "data";
    const Result r = run("synth gen --seed 3 --train 400 --val 100 --test 100 --out " + p(d));
    EXPECT_EQ(r.code, 0) << r.err;
    return d;
  }();
  return dir;
}

const fs::path& sans_table() {
  static const fs::path dir = [] {
    const fs::path d = root() / "ve_sans";
    const Result r = run("ve build --font " + p(fs::path(GLYPHEMBED_TEST_FONT_DIR) / "DejaVuSans.ttf") + " --out " + p(d));
    EXPECT_EQ(r.code, 0) << r.err;
    return d;
  }();
  return dir;
}

TEST(Cli, HelpListsDefaults) {
  const Result r = run("experiment --help");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("--base-p"), std::string::npos);
  EXPECT_NE(r.out.find("0.1"), std::string::npos);
  const Result top = run("--help");
  EXPECT_EQ(top.code, 0);
  for (const char* cmd : {"ve", "noise", "synth", "train", "eval", "experiment"}) {
    EXPECT_NE(top.out.find(cmd), std::string::npos) << cmd;
  }
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("ve build").code, 2);
  EXPECT_EQ(run("train --data x --out y --encoding bogus").code, 2);
}

TEST(Cli, InputErrorsLeaveNoOutput) {
  const fs::path out = root() / "missing_font";
  const Result r = run("ve build --font /nonexistent.ttf --out " + p(out));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
  EXPECT_FALSE(fs::exists(out));

  const Result u = run("ve neighbors --table " + p(sans_table() / "embedding.tsv") + " --char U+4E2D");
  EXPECT_EQ(u.code, 2);
  EXPECT_EQ(run("eval --model /nonexistent/model.ckpt " + p(dataset() / "val.jsonl")).code, 2);
}

TEST(Cli, BuildWritesArtifacts) {
  const auto files = tree(sans_table());
  EXPECT_TRUE(files.count("embedding.tsv"));
  EXPECT_TRUE(files.count("variance.tsv"));
  EXPECT_TRUE(files.count("config.toml"));
  const Result inspect = run("ve inspect --table " + p(sans_table() / "embedding.tsv"));
  EXPECT_EQ(inspect.code, 0);
  EXPECT_NE(inspect.out.find("DejaVuSans"), std::string::npos);
}

TEST(Cli, NeighborsOverlapAcrossFonts) {
  const fs::path serif = root() / "ve_serif";
  ASSERT_EQ(run("ve build --font " + p(fs::path(GLYPHEMBED_TEST_FONT_DIR) / "DejaVuSerif.ttf") + " --out " + p(serif)).code, 0);
  auto top = [](const fs::path& dir) {
    const Result r = run("ve neighbors --table " + p(dir / "embedding.tsv") + " --char O --k 5");
    EXPECT_EQ(r.code, 0) << r.err;
    std::vector<std::string> chars;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) chars.push_back(line.substr(0, line.find('\t')));
    return chars;
  };
  const auto a = top(sans_table());
  const auto b = top(serif);
  ASSERT_EQ(a.size(), 5u);
  ASSERT_EQ(b.size(), 5u);
  std::size_t overlap = 0;
  for (const auto& x : a)
    for (const auto& y : b) overlap += x == y;
  EXPECT_GE(overlap, 2u);
}

TEST(Cli, LayoutHasOneRowPerCharacter) {
  const fs::path out = root() / "layout";
  ASSERT_EQ(run("ve layout --table " + p(sans_table() / "embedding.tsv") + " --out " + p(out)).code, 0);
  const std::string text = slurp(out / "layout.tsv");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 96);  // header + 95
}

TEST(Cli, DeterministicVeBuild) {
  expect_deterministic("build", "ve build --dump-glyphs --font " +
                                    p(fs::path(GLYPHEMBED_TEST_FONT_DIR) / "DejaVuSerif.ttf"));
}

TEST(Cli, DeterministicSynth) { expect_deterministic("synth", "synth gen --seed 9 --train 3000 --val 500 --test 500"); }

TEST(Cli, DeterministicTrainAndEval) {
  expect_deterministic("train_onehot", "train --encoding onehot --epochs 2 --filters 8 --data " + p(dataset()));
  expect_deterministic("train_ve", "train --epochs 2 --filters 8 --encoding ve --table " +
                                       p(sans_table() / "embedding.tsv") + " --data " + p(dataset()));
  const std::string eval = "eval --model " + p(root() / "train_ve_a" / "model.ckpt") + " " +
                           p(dataset() / "test_clean.jsonl") + " " + p(dataset() / "test_mixed.jsonl");
  const Result a = run(eval, 1), b = run(eval, 4);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("test_mixed.jsonl"), std::string::npos);
}

TEST(Cli, DeterministicNoise) {
  for (const char* kind : {"delete", "insert", "replace", "swap", "all"}) {
    const std::string in = p(dataset() / "test_clean.jsonl");
    std::string outs[3];
    for (int i = 0; i < 3; ++i) {
      const fs::path out = root() / ("noise_" + std::string(kind) + std::to_string(i) + ".jsonl");
      const Result r = run("noise apply --jsonl --kind " + std::string(kind) + " --p 0.2 --seed 5 " + in + " " + p(out),
                        i == 2 ? 4 : 1);
      ASSERT_EQ(r.code, 0) << r.err;
      outs[i] = slurp(out);
    }
    EXPECT_EQ(outs[0], outs[1]) << kind;
    EXPECT_EQ(outs[0], outs[2]) << kind;
    EXPECT_NE(outs[0], slurp(dataset() / "test_clean.jsonl")) << kind;
  }
}

TEST(Cli, NaturalNoise) {
  const fs::path lex = root() / "lex.tsv", in = root() / "natural_in.txt", out = root() / "natural_out.txt";
  std::ofstream(lex) << "because\tbecuase\n";
  std::ofstream(in) << "Because it works.\n";
  const Result r = run("noise apply --kind natural --lexicon " + p(lex) + " " + p(in) + " " + p(out));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(out), "Becuase it works.\n");
  EXPECT_EQ(run("noise apply --kind natural " + p(in) + " " + p(out)).code, 2);
}

TEST(Cli, DeterministicExperimentAndReplay) {
  const std::string args = "experiment --train 600 --val 200 --test 200 --epochs 1 --filters 8 --dims 20,50 --sweep";
  expect_deterministic("experiment", args);
  const fs::path replay = root() / "experiment_replay";
  const Result r = run("--config " + p(root() / "experiment_a" / "config.toml") + " experiment --out " + p(replay), 1);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(replay / "results.tsv"), slurp(root() / "experiment_a" / "results.tsv"));
  EXPECT_EQ(slurp(replay / "sweep.tsv"), slurp(root() / "experiment_a" / "sweep.tsv"));
}

}  // namespace
