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

#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "winsumm/config.hpp"
#include "winsumm/corpus.hpp"
#include "winsumm/labeling.hpp"
#include "winsumm/model.hpp"
#include "winsumm/rouge.hpp"

namespace winsumm {

/// Take the ceil(budget * n) most probable sentences (ties to the lower
/// index) and return them in document order.
std::vector<std::size_t> select_summary(std::span<const double> probs, double budget = 0.2);

/// A labeled document shaped for the ranker.
struct TrainingExample {
  const CorpusPair* pair = nullptr;
  ShapedDocument shaped;
  std::vector<int> labels;  // first shaped.n_real labels
};

std::vector<TrainingExample> make_examples(std::span<const LabeledPair> labeled,
                                           const Vocabulary& vocab, std::size_t max_sents,
                                           std::size_t max_toks);

struct EpochLog {
  std::size_t epoch = 0;
  double mean_loss = 0.0;
  double val_rouge1 = 0.0;
};

struct TrainOptions {
  std::size_t epochs = 50;
  AdaDeltaOptions optimizer;
  std::uint64_t seed = 13;
  double budget = 0.2;
  std::size_t max_sents = kMaxSentences;
  std::size_t max_toks = kMaxTokens;
  // When set, the best checkpoint and the loss curve are written here.
  std::optional<std::filesystem::path> checkpoint_path;
  std::optional<std::filesystem::path> loss_curve_path;
  // Called after every epoch.
  std::function<void(const EpochLog&)> on_epoch;
};

struct TrainResult {
  RankerParams best;
  std::size_t best_epoch = 0;
  double best_val_rouge1 = 0.0;
  std::vector<EpochLog> curve;
  std::size_t steps = 0;
  double seconds = 0.0;
};

/// One AdaDelta step per document, documents reshuffled each epoch. The
/// parameters with the best validation ROUGE-1 recall are kept (the last
/// epoch when `valid` is empty). Throws DataError on a non-finite loss.
TrainResult train_ranker(const ModelConfig& config, RankerParams params,
                         std::span<const TrainingExample> train, std::span<const CorpusPair> valid,
                         const Vocabulary& vocab, const TrainOptions& opts);

struct DocumentRow {
  std::string id;
  std::vector<std::size_t> selected;
  RougeScore score;
};

struct EvalReport {
  std::string system;
  std::vector<DocumentRow> rows;
  RougeScore mean;
  std::vector<std::string> skipped;  // empty gold summaries
  double seconds = 0.0;
};

using Selector = std::function<std::vector<std::size_t>(const CorpusPair&)>;

/// Score each pair's selected sentences against its gold summary.
EvalReport evaluate_selector(const std::string& system, std::span<const CorpusPair> pairs,
                             const Selector& select);
EvalReport evaluate_lead(std::span<const CorpusPair> pairs, double budget = 0.2);
EvalReport evaluate_textrank(std::span<const CorpusPair> pairs, double budget = 0.2);
EvalReport evaluate_ranker(std::span<const CorpusPair> pairs, const RankerParams& params,
                           const ModelConfig& config, const Vocabulary& vocab, double budget = 0.2,
                           std::size_t max_sents = kMaxSentences, std::size_t max_toks = kMaxTokens);
/// Extract = every positive-labeled sentence.
EvalReport evaluate_oracle(std::span<const LabeledPair> labeled);

/// Header row, then one row per document, then a mean row; '.' decimals.
void write_report(std::ostream& out, const EvalReport& report);
void write_report(const std::filesystem::path& path, const EvalReport& report);
/// `<dir>/<id>.summary.txt`: selected indices on the first line, then the
/// selected sentence texts one per line.
void write_summaries(const std::filesystem::path& dir, const EvalReport& report,
                     std::span<const CorpusPair> pairs);

// ---------------------------------------------------------------------------
// End-to-end orchestration driven by a RunConfig.

struct PreparedData {
  std::vector<CorpusPair> pairs;  // id-sorted, all documents
  Split split;
  Vocabulary vocab;
};

/// Load the corpus, split it by seed and build the vocabulary from the
/// training papers.
PreparedData prepare(const RunConfig& config);
PreparedData prepare(std::vector<CorpusPair> pairs, const RunConfig& config);

struct RunOutput {
  ModelConfig model;
  TrainResult train;
  LabelStats label_stats;
};

/// Label the training split, initialize (word vectors when configured) and
/// train. Writes model.ckpt, vocab.txt and loss_curve.tsv under the output
/// directory when `write_files` is set.
RunOutput train_from_config(const RunConfig& config, const PreparedData& data, bool write_files);

struct SweepRow {
  std::size_t window = 0;
  double valid_rouge1 = 0.0;   // trained ranker
  double oracle_rouge1 = 0.0;  // positive-labeled sentences as the extract
};

std::vector<SweepRow> sweep_window(const RunConfig& config, const PreparedData& data,
                                   std::span<const std::size_t> sizes);
void write_sweep(std::ostream& out, std::span<const SweepRow> rows);

/// Gradient check of the full ranker loss on a fixed 5-sentence, 6-token
/// synthetic document (hidden 8, word_dim 8, 2 attention heads).
GradCheckResult ranker_grad_check(DocEncoder encoder, std::uint64_t seed = 11,
                                  const GradCheckOptions& opts = {});

}  // namespace winsumm
