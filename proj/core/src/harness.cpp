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

#include "winsumm/harness.hpp"

#include <algorithm>
#include <chrono>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <unordered_map>

#include "winsumm/baselines.hpp"
#include "winsumm/error.hpp"
#include "winsumm/synthetic.hpp"

namespace winsumm {
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string num(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::vector<std::size_t> select_summary(std::span<const double> probs, double budget) {
  const std::size_t k = budget_count(probs.size(), budget);
  auto order = rank_order(std::vector<double>(probs.begin(), probs.end()));
  order.resize(k);
  std::sort(order.begin(), order.end());
  return order;
}

std::vector<TrainingExample> make_examples(std::span<const LabeledPair> labeled,
                                           const Vocabulary& vocab, std::size_t max_sents,
                                           std::size_t max_toks) {
  std::vector<TrainingExample> out;
  out.reserve(labeled.size());
  for (const auto& lp : labeled) {
    TrainingExample ex;
    ex.pair = lp.pair;
    ex.shaped = shape_document(lp.pair->doc, vocab, max_sents, max_toks);
    ex.labels.assign(lp.labels.begin(),
                     lp.labels.begin() + static_cast<std::ptrdiff_t>(ex.shaped.n_real));
    if (ex.shaped.n_real > 0) out.push_back(std::move(ex));
  }
  return out;
}

TrainResult train_ranker(const ModelConfig& config, RankerParams params,
                         std::span<const TrainingExample> train, std::span<const CorpusPair> valid,
                         const Vocabulary& vocab, const TrainOptions& opts) {
  if (train.empty()) throw DataError("train: no labeled training documents");
  if (opts.epochs < 1) throw UsageError("train: epochs must be >= 1");
  const auto start = Clock::now();

  std::ofstream curve_file;
  if (opts.loss_curve_path) {
    curve_file.open(*opts.loss_curve_path);
    if (!curve_file) throw DataError("cannot write loss curve: " + opts.loss_curve_path->string());
    curve_file << "epoch\tmean_loss\tval_rouge1\n";
  }

  AdaDelta optimizer(params.named(config), opts.optimizer);
  Rng rng(opts.seed);
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  TrainResult result;
  result.best = params.clone(config);
  for (std::size_t epoch = 1; epoch <= opts.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    double total = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const TrainingExample& ex = train[order[k]];
      Tape tape;
      const Tensor loss = document_loss(tape, ex.shaped, ex.labels, params, config);
      if (!std::isfinite(loss.item()))
        throw DataError("non-finite loss at epoch " + std::to_string(epoch) + ", document " +
                        std::to_string(k) + " ('" + ex.pair->doc.id + "')");
      tape.backward(loss);
      optimizer.step();
      total += loss.item();
      ++result.steps;
    }

    EpochLog log;
    log.epoch = epoch;
    log.mean_loss = total / static_cast<double>(train.size());
    if (!valid.empty())
      log.val_rouge1 = evaluate_ranker(valid, params, config, vocab, opts.budget, opts.max_sents,
                                       opts.max_toks).mean.r1;
    const bool improved = valid.empty() || epoch == 1 || log.val_rouge1 > result.best_val_rouge1;
    if (improved) {
      result.best.copy_values_from(params, config);
      result.best_epoch = epoch;
      result.best_val_rouge1 = log.val_rouge1;
      if (opts.checkpoint_path) save_checkpoint(*opts.checkpoint_path, params, config);
    }
    result.curve.push_back(log);
    if (curve_file.is_open()) {
      curve_file << epoch << '\t' << num(log.mean_loss) << '\t' << num(log.val_rouge1) << '\n';
      curve_file.flush();
    }
    if (opts.on_epoch) opts.on_epoch(log);
  }
  result.seconds = seconds_since(start);
  return result;
}

EvalReport evaluate_selector(const std::string& system, std::span<const CorpusPair> pairs,
                             const Selector& select) {
  const auto start = Clock::now();
  EvalReport report;
  report.system = system;
  for (const auto& pair : pairs) {
    const auto gold = rouge_tokens(pair.gold);
    if (gold.empty()) {
      report.skipped.push_back(pair.doc.id);
      continue;
    }
    DocumentRow row;
    row.id = pair.doc.id;
    row.selected = select(pair);
    row.score = rouge_recall(rouge_tokens(pair.doc, row.selected), gold);
    report.rows.push_back(std::move(row));
  }
  if (!report.rows.empty()) {
    for (const auto& row : report.rows) {
      report.mean.r1 += row.score.r1;
      report.mean.r2 += row.score.r2;
      report.mean.rl += row.score.rl;
    }
    const auto n = static_cast<double>(report.rows.size());
    report.mean.r1 /= n;
    report.mean.r2 /= n;
    report.mean.rl /= n;
  }
  report.seconds = seconds_since(start);
  return report;
}

EvalReport evaluate_lead(std::span<const CorpusPair> pairs, double budget) {
  return evaluate_selector("lead", pairs, [budget](const CorpusPair& p) {
    return p.doc.size() == 0 ? std::vector<std::size_t>{} : lead_fraction(p.doc, budget);
  });
}

EvalReport evaluate_textrank(std::span<const CorpusPair> pairs, double budget) {
  return evaluate_selector("textrank", pairs, [budget](const CorpusPair& p) {
    if (p.doc.size() == 0) return std::vector<std::size_t>{};
    auto order = textrank(p.doc).order;
    order.resize(budget_count(p.doc.size(), budget));
    std::sort(order.begin(), order.end());
    return order;
  });
}

EvalReport evaluate_ranker(std::span<const CorpusPair> pairs, const RankerParams& params,
                           const ModelConfig& config, const Vocabulary& vocab, double budget,
                           std::size_t max_sents, std::size_t max_toks) {
  return evaluate_selector("ranker", pairs, [&](const CorpusPair& p) {
    const ShapedDocument shaped = shape_document(p.doc, vocab, max_sents, max_toks);
    if (shaped.n_real == 0) return std::vector<std::size_t>{};
    const auto probs = score_document(shaped, params, config);
    return select_summary(probs, budget);
  });
}

EvalReport evaluate_oracle(std::span<const LabeledPair> labeled) {
  EvalReport report;
  report.system = "oracle";
  const auto start = Clock::now();
  for (const auto& lp : labeled) {
    const auto gold = rouge_tokens(lp.pair->gold);
    if (gold.empty()) {
      report.skipped.push_back(lp.pair->doc.id);
      continue;
    }
    DocumentRow row;
    row.id = lp.pair->doc.id;
    row.selected = lp.positive_indices();
    row.score = rouge_recall(rouge_tokens(lp.pair->doc, row.selected), gold);
    report.rows.push_back(std::move(row));
  }
  for (const auto& row : report.rows) {
    report.mean.r1 += row.score.r1 / static_cast<double>(report.rows.size());
    report.mean.r2 += row.score.r2 / static_cast<double>(report.rows.size());
    report.mean.rl += row.score.rl / static_cast<double>(report.rows.size());
  }
  report.seconds = seconds_since(start);
  return report;
}

void write_report(std::ostream& out, const EvalReport& report) {
  out << "system\tid\trouge1_recall\trouge2_recall\trougeL_recall\n";
  for (const auto& row : report.rows)
    out << report.system << '\t' << row.id << '\t' << num(row.score.r1) << '\t'
        << num(row.score.r2) << '\t' << num(row.score.rl) << '\n';
  out << report.system << "\tmean\t" << num(report.mean.r1) << '\t' << num(report.mean.r2) << '\t'
      << num(report.mean.rl) << '\n';
  out << "# documents\t" << report.rows.size() << '\n';
  out << "# skipped_empty_gold\t" << report.skipped.size();
  for (std::size_t i = 0; i < report.skipped.size(); ++i)
    out << (i ? "," : "\t") << report.skipped[i];
  out << '\n';
}

void write_report(const fs::path& path, const EvalReport& report) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw DataError("cannot write report: " + path.string());
  write_report(out, report);
}

void write_summaries(const fs::path& dir, const EvalReport& report,
                     std::span<const CorpusPair> pairs) {
  fs::create_directories(dir);
  std::unordered_map<std::string, const CorpusPair*> by_id;
  for (const auto& p : pairs) by_id.emplace(p.doc.id, &p);
  for (const auto& row : report.rows) {
    const CorpusPair* pair = by_id.at(row.id);
    std::ofstream out(dir / (row.id + ".summary.txt"));
    if (!out) throw DataError("cannot write summary for " + row.id);
    for (std::size_t i = 0; i < row.selected.size(); ++i) out << (i ? " " : "") << row.selected[i];
    out << '\n';
    for (auto idx : row.selected) out << pair->doc.sentences[idx].text << '\n';
  }
}

// ---------------------------------------------------------------------------

PreparedData prepare(std::vector<CorpusPair> pairs, const RunConfig& config) {
  std::sort(pairs.begin(), pairs.end(),
            [](const CorpusPair& a, const CorpusPair& b) { return a.doc.id < b.doc.id; });
  PreparedData data;
  data.split = split_corpus(pairs, config.seed, config.split);
  data.vocab = Vocabulary::build(data.split.train, config.min_count);
  data.pairs = std::move(pairs);
  return data;
}

PreparedData prepare(const RunConfig& config) {
  if (config.corpus_dir.empty()) throw UsageError("no corpus directory configured");
  return prepare(load_corpus(config.corpus_dir), config);
}

RunOutput train_from_config(const RunConfig& config, const PreparedData& data, bool write_files) {
  config.validate();
  RunOutput out;
  const auto labeled = label_corpus(data.split.train, config.labels, &out.label_stats);
  const auto examples = make_examples(labeled, data.vocab, config.max_sents, config.max_toks);

  out.model = config.model;
  out.model.vocab_size = data.vocab.size();
  Rng rng(config.seed);
  Rng init_rng = rng.split(1);
  RankerParams params;
  if (!config.vectors_path.empty()) {
    const WordEmbeddings vectors =
        load_word_vectors(config.vectors_path, data.vocab, out.model.word_dim, init_rng);
    params = RankerParams::init(out.model, init_rng, &vectors);
  } else {
    params = RankerParams::init(out.model, init_rng);
  }

  TrainOptions topts;
  topts.epochs = config.epochs;
  topts.optimizer = config.optimizer;
  topts.seed = rng.split(2).next();
  topts.budget = config.budget;
  topts.max_sents = config.max_sents;
  topts.max_toks = config.max_toks;
  if (write_files) {
    fs::create_directories(config.output_dir);
    const auto ckpt = config.checkpoint_path();
    if (ckpt.has_parent_path()) fs::create_directories(ckpt.parent_path());
    topts.checkpoint_path = ckpt;
    topts.loss_curve_path = config.output_dir / "loss_curve.tsv";
    data.vocab.save(ckpt.parent_path() / "vocab.txt");
  }
  out.train = train_ranker(out.model, std::move(params), examples, data.split.valid, data.vocab, topts);
  return out;
}

std::vector<SweepRow> sweep_window(const RunConfig& config, const PreparedData& data,
                                   std::span<const std::size_t> sizes) {
  if (data.split.valid.empty()) throw DataError("sweep: the validation split is empty");
  std::vector<SweepRow> rows;
  for (std::size_t w : sizes) {
    RunConfig cfg = config;
    cfg.labels.method = LabelMethod::kWindow;
    cfg.labels.window.window = w;
    const RunOutput run = train_from_config(cfg, data, false);

    SweepRow row;
    row.window = w;
    row.valid_rouge1 = evaluate_ranker(data.split.valid, run.train.best, run.model, data.vocab,
                                       cfg.budget, cfg.max_sents, cfg.max_toks).mean.r1;
    const auto oracle = label_corpus(data.split.valid, cfg.labels);
    row.oracle_rouge1 = evaluate_oracle(oracle).mean.r1;
    rows.push_back(row);
  }
  return rows;
}

void write_sweep(std::ostream& out, std::span<const SweepRow> rows) {
  out << "window\tvalid_rouge1_recall\toracle_rouge1_recall\n";
  for (const auto& r : rows)
    out << r.window << '\t' << num(r.valid_rouge1) << '\t' << num(r.oracle_rouge1) << '\n';
}

GradCheckResult ranker_grad_check(DocEncoder encoder, std::uint64_t seed,
                                  const GradCheckOptions& opts) {
  // Six distinct words per sentence so no sentence is truncated or merged.
  const auto words = synthetic::lexicon(20, seed);
  Rng rng(seed);
  std::string text;
  for (std::size_t s = 0; s < 5; ++s) {
    std::vector<std::string> ws(6);
    for (auto& w : ws) w = words[rng.below(words.size())];
    // Five words plus the final period make six tokens.
    ws.pop_back();
    text += synthetic::sentence_text(ws) + " ";
  }
  CorpusPair pair;
  pair.doc = make_document("gradcheck", text);
  pair.gold = pair.doc;
  const Vocabulary vocab = Vocabulary::build(std::span<const CorpusPair>(&pair, 1));
  const ShapedDocument shaped = shape_document(pair.doc, vocab);
  const std::vector<int> labels = {1, 0, 0, 1, 0};

  ModelConfig config;
  config.vocab_size = vocab.size();
  config.word_dim = 8;
  config.lstm_hidden = 8;
  config.attention_heads = 2;
  config.doc_encoder = encoder;
  Rng init(seed + 1);
  const RankerParams params = RankerParams::init(config, init);
  // Check at a generic point. At the ±0.1 training init many gradients are
  // ~1e-8, below the central-difference round-off floor for a loss near 100.
  for (const auto& p : params.named(config)) {
    Tensor t = p.tensor;
    for (double& v : t.value()) v = init.uniform(-1.0, 1.0);
  }
  const auto named = params.named(config);
  return grad_check(
      [&](Tape& tape) { return document_loss(tape, shaped, labels, params, config); }, named, opts);
}

}  // namespace winsumm
