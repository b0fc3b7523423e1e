// Copyright 2026 The winsumm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "winsumm/baselines.hpp"
#include "winsumm/cli.hpp"
#include "winsumm/error.hpp"
#include "winsumm/harness.hpp"
#include "winsumm/synthetic.hpp"

namespace winsumm {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("winsumm-harness-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(SelectSummary, Examples) {
  const std::vector<double> uniform(10, 0.5);
  EXPECT_EQ(select_summary(uniform, 0.2), (std::vector<std::size_t>{0, 1}));
  std::vector<double> peaked(10, 0.1);
  peaked[7] = 0.9;
  peaked[3] = 0.8;
  EXPECT_EQ(select_summary(peaked, 0.2), (std::vector<std::size_t>{3, 7}));
  EXPECT_EQ(select_summary(peaked, 1.0).size(), 10u);
  EXPECT_EQ(select_summary(std::vector<double>(25, 0.3)).size(), 5u);
}

std::vector<CorpusPair> lead_gold_corpus() {
  // Gold summaries are exactly the first 20% of each paper.
  std::vector<CorpusPair> pairs;
  Rng rng(4);
  for (int d = 0; d < 3; ++d) {
    const auto text = synthetic::random_pair(rng, 10, 6, 30, "L" + std::to_string(d));
    CorpusPair pair;
    pair.doc = make_document(text.id, text.paper);
    std::string gold;
    for (std::size_t i : lead_fraction(pair.doc)) gold += pair.doc.sentences[i].text + " ";
    pair.gold = make_document(text.id, gold);
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

TEST(Evaluate, LeadOnLeadGoldIsPerfect) {
  const auto pairs = lead_gold_corpus();
  const auto report = evaluate_lead(pairs);
  ASSERT_EQ(report.rows.size(), 3u);
  EXPECT_EQ(report.mean.r1, 1.0);
  EXPECT_EQ(report.mean.r2, 1.0);
  EXPECT_EQ(report.mean.rl, 1.0);
}

TEST(Evaluate, EmptyGoldIsSkippedAndCounted) {
  auto pairs = lead_gold_corpus();
  pairs[1].gold = make_document(pairs[1].doc.id, "");
  const auto report = evaluate_textrank(pairs);
  EXPECT_EQ(report.rows.size(), 2u);
  EXPECT_EQ(report.skipped, (std::vector<std::string>{pairs[1].doc.id}));
  std::ostringstream out;
  write_report(out, report);
  const auto ls = lines(out.str());
  EXPECT_EQ(ls.front(), "system\tid\trouge1_recall\trouge2_recall\trougeL_recall");
  EXPECT_EQ(ls.back(), "# skipped_empty_gold\t1\t" + pairs[1].doc.id);
}

TEST(Evaluate, MeansAreAveragesOfRows) {
  const auto pairs = synthetic::materialize(synthetic::designated_corpus({.docs = 5}));
  const auto report = evaluate_textrank(pairs);
  double r1 = 0, r2 = 0, rl = 0;
  for (const auto& row : report.rows) {
    r1 += row.score.r1;
    r2 += row.score.r2;
    rl += row.score.rl;
  }
  EXPECT_NEAR(report.mean.r1, r1 / 5, 1e-15);
  EXPECT_NEAR(report.mean.r2, r2 / 5, 1e-15);
  EXPECT_NEAR(report.mean.rl, rl / 5, 1e-15);
}

TEST(Evaluate, SummaryFilesReproduceReportRows) {
  TempDir dir;
  const auto pairs = synthetic::materialize(synthetic::designated_corpus({.docs = 4}));
  const auto report = evaluate_textrank(pairs);
  write_summaries(dir.path(), report, pairs);
  for (std::size_t d = 0; d < pairs.size(); ++d) {
    const auto ls = lines(read(dir.path() / (pairs[d].doc.id + ".summary.txt")));
    ASSERT_FALSE(ls.empty());
    std::istringstream first(ls[0]);
    std::vector<std::size_t> idx;
    for (std::size_t i; first >> i;) idx.push_back(i);
    EXPECT_EQ(idx, report.rows[d].selected);
    EXPECT_EQ(idx.size(), budget_count(pairs[d].doc.size(), 0.2));
    std::string text;
    for (std::size_t k = 1; k < ls.size(); ++k) text += ls[k] + " ";
    const auto score = rouge_recall(rouge_tokens(make_document("s", text)), rouge_tokens(pairs[d].gold));
    EXPECT_EQ(score.r1, report.rows[d].score.r1);
    EXPECT_EQ(score.r2, report.rows[d].score.r2);
    EXPECT_EQ(score.rl, report.rows[d].score.rl);
  }
}

TEST(Evaluate, OracleUsesPositives) {
  const auto pairs = synthetic::materialize(synthetic::designated_corpus({.docs = 3}));
  const auto labeled = label_corpus(pairs, LabelParams{});
  const auto report = evaluate_oracle(labeled);
  // The designated sentences are the gold, so the window oracle recovers it.
  EXPECT_EQ(report.mean.r1, 1.0);
}

struct Tiny {
  std::vector<CorpusPair> pairs;
  Vocabulary vocab;
  std::vector<LabeledPair> labeled;
  std::vector<TrainingExample> examples;
  ModelConfig config;
};

Tiny tiny(std::size_t docs) {
  Tiny t;
  t.pairs = synthetic::materialize(synthetic::designated_corpus({.docs = docs, .sentences = 8, .block = 4}));
  t.vocab = Vocabulary::build(t.pairs);
  t.labeled = label_corpus(t.pairs, LabelParams{.window = {.window = 4}});
  t.examples = make_examples(t.labeled, t.vocab, kMaxSentences, kMaxTokens);
  t.config.vocab_size = t.vocab.size();
  t.config.word_dim = 6;
  t.config.lstm_hidden = 5;
  return t;
}

TEST(Train, StepsAndCurve) {
  TempDir dir;
  const Tiny t = tiny(2);
  Rng rng(1);
  TrainOptions opts;
  opts.epochs = 5;
  opts.loss_curve_path = dir.path() / "curve.tsv";
  opts.checkpoint_path = dir.path() / "m.ckpt";
  std::size_t callbacks = 0;
  opts.on_epoch = [&](const EpochLog&) { ++callbacks; };
  const auto result = train_ranker(t.config, RankerParams::init(t.config, rng), t.examples, t.pairs, t.vocab, opts);
  EXPECT_EQ(result.steps, 10u);
  EXPECT_EQ(result.curve.size(), 5u);
  EXPECT_EQ(callbacks, 5u);
  const auto ls = lines(read(dir.path() / "curve.tsv"));
  ASSERT_EQ(ls.size(), 6u);
  EXPECT_EQ(ls[0], "epoch\tmean_loss\tval_rouge1");
  EXPECT_EQ(ls[1].substr(0, 2), "1\t");
  EXPECT_TRUE(fs::exists(dir.path() / "m.ckpt"));
  // The saved checkpoint is the best epoch's parameters.
  const auto back = load_checkpoint(dir.path() / "m.ckpt", t.config);
  EXPECT_EQ(score_document(t.examples[0].shaped, back, t.config),
            score_document(t.examples[0].shaped, result.best, t.config));
  EXPECT_EQ(result.best_val_rouge1, result.curve[result.best_epoch - 1].val_rouge1);
}

TEST(Train, FixedSeedIsBitwiseRepeatable) {
  const Tiny t = tiny(3);
  auto run = [&] {
    Rng rng(2);
    TrainOptions opts;
    opts.epochs = 3;
    opts.seed = 99;
    return train_ranker(t.config, RankerParams::init(t.config, rng), t.examples, {}, t.vocab, opts);
  };
  const auto a = run(), b = run();
  for (std::size_t e = 0; e < 3; ++e) EXPECT_EQ(a.curve[e].mean_loss, b.curve[e].mean_loss);
}

TEST(Train, NonFiniteLossAborts) {
  const Tiny t = tiny(2);
  Rng rng(3);
  RankerParams p = RankerParams::init(t.config, rng);
  p.bias[0] = std::nan("");
  TrainOptions opts;
  opts.epochs = 2;
  try {
    train_ranker(t.config, p, t.examples, {}, t.vocab, opts);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("epoch 1"), std::string::npos) << e.what();
  }
}

TEST(Train, RejectsEmptyTrainingSet) {
  const Tiny t = tiny(1);
  Rng rng(3);
  EXPECT_THROW(train_ranker(t.config, RankerParams::init(t.config, rng), {}, {}, t.vocab, {}), DataError);
}

TEST(RunConfig, KeysParseAndValidate) {
  RunConfig c;
  c.set("window", "5");
  c.set("label_method", "greedy");
  c.set("encoder", "hierarchical");
  c.set("split", "8:1:1");
  c.set("lr", "0.5");
  c.set("label_empty_blocks", "false");
  EXPECT_EQ(c.labels.window.window, 5u);
  EXPECT_EQ(c.labels.method, LabelMethod::kGreedy);
  EXPECT_EQ(c.model.doc_encoder, DocEncoder::kHierarchical);
  EXPECT_EQ(c.split, (std::array<double, 3>{8, 1, 1}));
  EXPECT_EQ(c.optimizer.lr, 0.5);
  EXPECT_FALSE(c.labels.window.label_empty_blocks);
  EXPECT_THROW(c.set("windw", "5"), UsageError);
  EXPECT_THROW(c.set("window", "five"), UsageError);
  EXPECT_THROW(c.set("split", "8:1"), UsageError);
  c.budget = 0.0;
  EXPECT_THROW(c.validate(), UsageError);
  c.budget = 0.2;
  c.epochs = 0;
  EXPECT_THROW(c.validate(), UsageError);
  EXPECT_EQ(RunConfig{}.checkpoint_path(), fs::path("winsumm-out") / "model.ckpt");
  for (const auto& [key, value] : RunConfig{}.to_pairs()) {
    RunConfig d;
    EXPECT_NO_THROW(d.set(key, value)) << key;
  }
}

TEST(RunConfig, File) {
  TempDir dir;
  std::ofstream(dir.path() / "run.conf") << "# comment\nepochs = 7   # trailing\n\nbudget=0.3\n";
  const RunConfig c = load_run_config(dir.path() / "run.conf");
  EXPECT_EQ(c.epochs, 7u);
  EXPECT_EQ(c.budget, 0.3);
  std::ofstream(dir.path() / "bad.conf") << "epochs 7\n";
  try {
    load_run_config(dir.path() / "bad.conf");
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find(":1"), std::string::npos);
  }
  EXPECT_THROW(load_run_config(dir.path() / "missing.conf"), DataError);
}

TEST(Sweep, SingleSizeAndOracleDensity) {
  RunConfig cfg;
  cfg.epochs = 1;
  cfg.model.word_dim = 4;
  cfg.model.lstm_hidden = 3;
  cfg.split = {4, 1, 1};
  const auto data = prepare(synthetic::materialize(synthetic::designated_corpus({.docs = 6})), cfg);
  const std::vector<std::size_t> one = {10};
  const auto rows = sweep_window(cfg, data, one);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].window, 10u);
  std::ostringstream out;
  write_sweep(out, rows);
  EXPECT_EQ(lines(out.str()).size(), 2u);
  const std::vector<std::size_t> two = {3, 10};
  const auto again = sweep_window(cfg, data, two);
  EXPECT_EQ(again[1].valid_rouge1, rows[0].valid_rouge1);
}

// ---------------------------------------------------------------------------
// Command line

struct CliRun {
  int code;
  std::string out, err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "winsumm");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, RougePrintsThreeRecalls) {
  TempDir dir;
  std::ofstream(dir.path() / "a.txt") << "The cat sat. On the mat.";
  std::ofstream(dir.path() / "b.txt") << "The cat sat on a mat.";
  const auto r = cli({"rouge", "--cand", (dir.path() / "a.txt").string(), "--ref", (dir.path() / "b.txt").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 1u);
  std::istringstream fields(ls[0]);
  double r1, r2, rl;
  fields >> r1 >> r2 >> rl;
  EXPECT_NEAR(r1, 5.0 / 6.0, 1e-12);
  EXPECT_NEAR(r2, 3.0 / 5.0, 1e-12);
  EXPECT_NEAR(rl, 5.0 / 6.0, 1e-12);
  EXPECT_EQ(std::count(ls[0].begin(), ls[0].end(), '\t'), 2);
}

TEST(Cli, UsageErrorsExitOne) {
  auto r = cli({"train", "--no-such-flag"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  EXPECT_EQ(cli({}).code, 1);
  EXPECT_EQ(cli({"frobnicate"}).code, 1);
  EXPECT_EQ(cli({"label", "--window", "abc", "--corpus", "."}).code, 1);
  EXPECT_EQ(cli({"evaluate", "--system", "oracle"}).code, 1);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, DataErrorsExitTwo) {
  TempDir dir;
  EXPECT_EQ(cli({"ingest", "--corpus", (dir.path() / "nope").string()}).code, 2);
  EXPECT_EQ(cli({"rouge", "--cand", "/nonexistent/a", "--ref", "/nonexistent/b"}).code, 2);
  EXPECT_EQ(cli({"train", "--config", (dir.path() / "missing.conf").string()}).code, 2);
}

TEST(Cli, LabelWritesCeilPositives) {
  TempDir dir;
  const auto texts = synthetic::designated_corpus({.docs = 3, .sentences = 25});
  synthetic::write_corpus(dir.path() / "corpus", texts);
  const auto r = cli({"label", "--corpus", (dir.path() / "corpus").string(), "--window", "10", "--out",
                      (dir.path() / "out").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto records = read_label_file(dir.path() / "out" / "labels.tsv");
  ASSERT_EQ(records.size(), 3u);
  for (const auto& rec : records) {
    EXPECT_EQ(rec.labels.size(), 25u);
    EXPECT_EQ(std::count(rec.labels.begin(), rec.labels.end(), 1), 3);
  }
}

TEST(Cli, GradcheckPasses) {
  const auto r = cli({"gradcheck"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("max_rel_error"), std::string::npos);
  EXPECT_EQ(cli({"gradcheck", "--tolerance", "1e-30"}).code, 2);
}

TEST(Cli, IngestTrainEvaluateSummarize) {
  TempDir dir;
  synthetic::write_corpus(dir.path() / "corpus", synthetic::designated_corpus({.docs = 12}));
  std::ofstream(dir.path() / "run.conf") << "corpus = " << (dir.path() / "corpus").string() << "\n"
                                         << "out = " << (dir.path() / "out").string() << "\n"
                                         << "epochs = 2\nword_dim = 6\nlstm_hidden = 5\n";
  const std::string conf = (dir.path() / "run.conf").string();

  auto r = cli({"ingest", "--config", conf});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("pairs\t12"), std::string::npos);
  EXPECT_NE(r.out.find("train\t10"), std::string::npos);

  r = cli({"evaluate", "--config", conf, "--system", "ranker"});
  EXPECT_EQ(r.code, 2);  // no checkpoint yet

  r = cli({"train", "--config", conf});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir.path() / "out" / "model.ckpt"));
  EXPECT_TRUE(fs::exists(dir.path() / "out" / "vocab.txt"));
  EXPECT_EQ(lines(read(dir.path() / "out" / "loss_curve.tsv")).size(), 3u);

  const std::string report = (dir.path() / "out" / "ranker.tsv").string();
  r = cli({"evaluate", "--config", conf, "--system", "ranker", "--report", report});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(read(report)).size(), 1u + 1u + 1u + 2u);  // header, 1 doc, mean, footer

  r = cli({"evaluate", "--config", conf, "--system", "lead", "--split", "all"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("lead\tmean"), std::string::npos);

  r = cli({"summarize", "--config", conf, "--split", "valid"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(dir.path() / "out" / "summaries")) {
    ++files;
    const auto ls = lines(read(entry.path()));
    EXPECT_EQ(ls.size(), 1u + 4u);  // indices + ceil(0.2 * 20) sentences
  }
  EXPECT_EQ(files, 1u);

  EXPECT_EQ(cli({"summarize", "--config", conf, "--split", "middle"}).code, 1);
}

}  // namespace
}  // namespace winsumm
