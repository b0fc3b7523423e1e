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

#include "winsumm/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "winsumm/error.hpp"
#include "winsumm/harness.hpp"

namespace winsumm {
namespace fs = std::filesystem;

namespace {

constexpr double kGradCheckTolerance = 1e-4;

// Shortest representation that reads back to the same double.
std::string num(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

struct Overrides {
  std::string config_path;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
};

std::string flag_name(const std::string& key) {
  if (key == "split") return "--split-ratio";
  std::string flag = key;
  std::replace(flag.begin(), flag.end(), '_', '-');
  return "--" + flag;
}

const std::map<std::string, std::string>& option_help() {
  static const std::map<std::string, std::string> help = {
      {"corpus", "Corpus directory of <id>.paper.txt / <id>.slides.txt pairs"},
      {"vectors", "Pretrained word vectors (word v1 ... vd per line)"},
      {"out", "Output directory"},
      {"checkpoint", "Checkpoint path (default <out>/model.ckpt)"},
      {"seed", "Random seed"},
      {"epochs", "Training epochs"},
      {"lr", "AdaDelta learning rate"},
      {"rho", "AdaDelta decay"},
      {"eps", "AdaDelta epsilon"},
      {"clip_norm", "Global gradient-norm clip (0 disables)"},
      {"label_method", "window or greedy"},
      {"window", "Sentences per labeling window"},
      {"label_metric", "Window scoring metric: rouge1, rouge2 or rougeL"},
      {"window_scoring", "singleton or marginal-gain"},
      {"label_empty_blocks", "Label the first sentence of an all-zero window"},
      {"encoder", "simple or hierarchical"},
      {"word_dim", "Word embedding size"},
      {"lstm_hidden", "LSTM hidden size"},
      {"attention_heads", "Attention heads (hierarchical encoder)"},
      {"pos_buckets", "Position buckets"},
      {"w_pos_class", "Loss weight of positive labels"},
      {"w_neg_class", "Loss weight of negative labels"},
      {"novelty", "negate or literal-additive"},
      {"budget", "Summary size as a fraction of the document"},
      {"min_count", "Minimum word count for the vocabulary"},
      {"max_sents", "Sentences per document after padding"},
      {"max_toks", "Tokens per sentence after padding"},
      {"split", "Train:valid:test ratio"},
  };
  return help;
}

void add_run_options(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config_path, "Configuration file (key = value lines)");
  for (const auto& key : run_config_keys()) {
    std::string names = flag_name(key);
    if (key == "label_method") names += ",--method";
    if (key == "label_metric") names += ",--metric";
    const auto help = option_help().find(key);
    o.options[key] = sub->add_option(names, o.values[key], help == option_help().end() ? "" : help->second);
  }
}

RunConfig resolve(const Overrides& o) {
  RunConfig config;
  if (!o.config_path.empty()) apply_run_config_file(config, o.config_path);
  for (const auto& [key, opt] : o.options)
    if (opt->count() > 0) config.set(key, o.values.at(key));
  config.validate();
  return config;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::span<const CorpusPair> pick_split(const PreparedData& data, const std::string& name) {
  if (name == "train") return data.split.train;
  if (name == "valid") return data.split.valid;
  if (name == "test") return data.split.test;
  if (name == "all") return data.pairs;
  throw UsageError("unknown split '" + name + "' (train, valid, test, all)");
}

struct LoadedRanker {
  ModelConfig config;
  RankerParams params;
  Vocabulary vocab;
};

LoadedRanker load_ranker(const RunConfig& cfg, const std::string& vocab_path) {
  const fs::path ckpt = cfg.checkpoint_path();
  if (!fs::exists(ckpt)) throw DataError("checkpoint not found: " + ckpt.string());
  Checkpoint c = load_checkpoint(ckpt);
  const fs::path vp = vocab_path.empty() ? ckpt.parent_path() / "vocab.txt" : fs::path(vocab_path);
  LoadedRanker out{c.config, std::move(c.params), Vocabulary::load(vp)};
  if (out.vocab.size() != out.config.vocab_size)
    throw DataError("vocabulary " + vp.string() + " has " + std::to_string(out.vocab.size()) +
                    " entries, checkpoint expects " + std::to_string(out.config.vocab_size));
  return out;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> sizes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size() || v == 0) throw UsageError("bad window size '" + item + "'");
    sizes.push_back(v);
  }
  if (sizes.empty()) throw UsageError("no window sizes given");
  return sizes;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"winsumm: window-labeled extractive summarization"};
  app.require_subcommand(1);

  Overrides ingest_o, label_o, train_o, summarize_o, evaluate_o, sweep_o, gradcheck_o;

  auto* ingest = app.add_subcommand("ingest", "Load a corpus, build the vocabulary and split");
  add_run_options(ingest, ingest_o);

  auto* label = app.add_subcommand("label", "Write per-sentence extractive labels");
  add_run_options(label, label_o);
  std::string labels_path;
  label->add_option("--labels", labels_path, "Label file (default <out>/labels.tsv)");

  auto* train = app.add_subcommand("train", "Train the sentence ranker");
  add_run_options(train, train_o);

  auto* summarize = app.add_subcommand("summarize", "Write summaries with a trained ranker");
  add_run_options(summarize, summarize_o);
  std::string summarize_split = "test", summarize_vocab, summaries_dir;
  summarize->add_option("--split", summarize_split, "train, valid, test or all");
  summarize->add_option("--vocab", summarize_vocab, "Vocabulary file (default: next to checkpoint)");
  summarize->add_option("--summaries", summaries_dir, "Output directory (default <out>/summaries)");

  auto* evaluate = app.add_subcommand("evaluate", "ROUGE recall report for one system");
  add_run_options(evaluate, evaluate_o);
  std::string system = "ranker", eval_split = "test", eval_vocab, report_path, eval_summaries;
  evaluate->add_option("--system", system, "lead, textrank or ranker")
      ->check(CLI::IsMember({"lead", "textrank", "ranker"}));
  evaluate->add_option("--split", eval_split, "train, valid, test or all");
  evaluate->add_option("--vocab", eval_vocab, "Vocabulary file for the ranker");
  evaluate->add_option("--report", report_path, "TSV report path (default: stdout)");
  evaluate->add_option("--summaries", eval_summaries, "Also write summary files here");

  auto* sweep = app.add_subcommand("sweep", "Window-size sweep on the validation split");
  add_run_options(sweep, sweep_o);
  std::string sizes_text = "3,5,7,10,15", sweep_report;
  sweep->add_option("--sizes", sizes_text, "Comma-separated window sizes");
  sweep->add_option("--report", sweep_report, "TSV path (default: stdout)");

  auto* rouge = app.add_subcommand("rouge", "ROUGE-1/2/L recall of a candidate against a reference");
  std::string cand_path, ref_path;
  rouge->add_option("--cand", cand_path, "Candidate text file")->required();
  rouge->add_option("--ref", ref_path, "Reference text file")->required();

  auto* gradcheck = app.add_subcommand("gradcheck", "Finite-difference check of the ranker gradients");
  add_run_options(gradcheck, gradcheck_o);
  double tolerance = kGradCheckTolerance;
  gradcheck->add_option("--tolerance", tolerance, "Maximum allowed relative error");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return 1;
  }

  try {
    if (*ingest) {
      const RunConfig cfg = resolve(ingest_o);
      LoadReport load_report;
      PreparedData data = prepare(load_corpus(cfg.corpus_dir, &load_report), cfg);
      fs::create_directories(cfg.output_dir);
      data.vocab.save(cfg.output_dir / "vocab.txt");
      std::ofstream split_file(cfg.output_dir / "split.tsv");
      if (!split_file) throw DataError("cannot write " + (cfg.output_dir / "split.tsv").string());
      split_file << "id\tsplit\n";
      for (const auto& p : data.split.train) split_file << p.doc.id << "\ttrain\n";
      for (const auto& p : data.split.valid) split_file << p.doc.id << "\tvalid\n";
      for (const auto& p : data.split.test) split_file << p.doc.id << "\ttest\n";
      std::size_t sentences = 0;
      for (const auto& p : data.pairs) sentences += p.doc.size();
      out << "pairs\t" << data.pairs.size() << "\n"
          << "skipped_files\t" << load_report.skipped.size() << "\n"
          << "sentences\t" << sentences << "\n"
          << "train\t" << data.split.train.size() << "\n"
          << "valid\t" << data.split.valid.size() << "\n"
          << "test\t" << data.split.test.size() << "\n"
          << "vocabulary\t" << data.vocab.size() << "\n";
      return 0;
    }

    if (*label) {
      const RunConfig cfg = resolve(label_o);
      const auto pairs = load_corpus(cfg.corpus_dir);
      LabelStats stats;
      const auto labeled = label_corpus(pairs, cfg.labels, &stats);
      const fs::path path = labels_path.empty() ? cfg.output_dir / "labels.tsv" : fs::path(labels_path);
      if (path.has_parent_path()) fs::create_directories(path.parent_path());
      write_label_file(path, labeled);
      out << "labeled\t" << labeled.size() << "\n"
          << "skipped_empty_gold\t" << stats.skipped_ids.size() << "\n"
          << "mean_positive_rate\t" << stats.mean_positive_rate() << "\n"
          << "labels\t" << path.string() << "\n";
      return 0;
    }

    if (*train) {
      RunConfig cfg = resolve(train_o);
      const PreparedData data = prepare(cfg);
      const RunOutput run = train_from_config(cfg, data, true);
      out << "epochs\t" << run.train.curve.size() << "\n"
          << "steps\t" << run.train.steps << "\n"
          << "best_epoch\t" << run.train.best_epoch << "\n"
          << "best_val_rouge1\t" << run.train.best_val_rouge1 << "\n"
          << "final_loss\t" << run.train.curve.back().mean_loss << "\n"
          << "seconds\t" << run.train.seconds << "\n"
          << "checkpoint\t" << cfg.checkpoint_path().string() << "\n";
      return 0;
    }

    if (*summarize) {
      const RunConfig cfg = resolve(summarize_o);
      const LoadedRanker ranker = load_ranker(cfg, summarize_vocab);
      const PreparedData data = prepare(cfg);
      const auto pairs = pick_split(data, summarize_split);
      const auto report = evaluate_ranker(pairs, ranker.params, ranker.config, ranker.vocab,
                                          cfg.budget, cfg.max_sents, cfg.max_toks);
      const fs::path dir = summaries_dir.empty() ? cfg.output_dir / "summaries" : fs::path(summaries_dir);
      write_summaries(dir, report, pairs);
      out << "summaries\t" << report.rows.size() << "\n" << "directory\t" << dir.string() << "\n";
      return 0;
    }

    if (*evaluate) {
      const RunConfig cfg = resolve(evaluate_o);
      const PreparedData data = prepare(cfg);
      const auto pairs = pick_split(data, eval_split);
      if (pairs.empty()) throw DataError("split '" + eval_split + "' is empty");
      EvalReport report;
      if (system == "lead") {
        report = evaluate_lead(pairs, cfg.budget);
      } else if (system == "textrank") {
        report = evaluate_textrank(pairs, cfg.budget);
      } else {
        const LoadedRanker ranker = load_ranker(cfg, eval_vocab);
        report = evaluate_ranker(pairs, ranker.params, ranker.config, ranker.vocab, cfg.budget,
                                 cfg.max_sents, cfg.max_toks);
      }
      if (report_path.empty()) {
        write_report(out, report);
      } else {
        write_report(fs::path(report_path), report);
      }
      if (!eval_summaries.empty()) write_summaries(eval_summaries, report, pairs);
      err << report.system << ": " << report.rows.size() << " documents in " << report.seconds << " s\n";
      return 0;
    }

    if (*sweep) {
      const RunConfig cfg = resolve(sweep_o);
      const auto sizes = parse_sizes(sizes_text);
      const PreparedData data = prepare(cfg);
      const auto rows = sweep_window(cfg, data, sizes);
      if (sweep_report.empty()) {
        write_sweep(out, rows);
      } else {
        std::ofstream f(sweep_report);
        if (!f) throw DataError("cannot write " + sweep_report);
        write_sweep(f, rows);
      }
      return 0;
    }

    if (*rouge) {
      const Document cand = make_document("cand", read_text(cand_path));
      const Document ref = make_document("ref", read_text(ref_path));
      const RougeScore s = rouge_recall(rouge_tokens(cand), rouge_tokens(ref));
      out << num(s.r1) << '\t' << num(s.r2) << '\t' << num(s.rl) << '\n';
      return 0;
    }

    if (*gradcheck) {
      const RunConfig cfg = resolve(gradcheck_o);
      std::vector<DocEncoder> encoders = {DocEncoder::kSimple, DocEncoder::kHierarchical};
      if (gradcheck_o.options.at("encoder")->count() > 0) encoders = {cfg.model.doc_encoder};
      double worst = 0.0;
      for (DocEncoder enc : encoders) {
        const GradCheckResult r = ranker_grad_check(enc, cfg.seed);
        out << to_string(enc) << "\tmax_rel_error\t" << r.max_rel_error << "\t(" << r.worst_parameter
            << "[" << r.worst_index << "], " << r.coordinates << " coordinates)\n";
        worst = std::max(worst, r.max_rel_error);
      }
      out << "max_rel_error\t" << worst << '\n';
      if (!(worst < tolerance)) {
        err << "gradient check failed: " << worst << " >= " << tolerance << '\n';
        return 2;
      }
      return 0;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace winsumm
