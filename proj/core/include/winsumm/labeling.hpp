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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "winsumm/corpus.hpp"

namespace winsumm {

enum class LabelMethod { kWindow, kGreedy };
enum class RougeMetric { kRouge1, kRouge2, kRougeL };

/// How a sentence is scored inside a window.
enum class WindowScoring {
  kSingleton,     // the sentence alone against the gold text
  kMarginalGain,  // the positives picked so far plus the sentence
};

std::string_view to_string(LabelMethod m);
std::string_view to_string(RougeMetric m);
std::string_view to_string(WindowScoring s);
LabelMethod parse_label_method(std::string_view s);
RougeMetric parse_rouge_metric(std::string_view s);
WindowScoring parse_window_scoring(std::string_view s);

/// ROUGE recall of `candidate` against `reference` under `metric`.
double rouge_metric(RougeMetric metric, std::span<const std::string> candidate,
                    std::span<const std::string> reference);

struct WindowOptions {
  std::size_t window = 10;
  RougeMetric metric = RougeMetric::kRouge1;
  WindowScoring scoring = WindowScoring::kSingleton;
  // A block whose best score is exactly 0 still marks its first sentence.
  bool label_empty_blocks = true;
};

struct LabeledPair {
  const CorpusPair* pair = nullptr;  // non-owning
  std::vector<int> labels;           // one 0/1 per doc sentence
  LabelMethod method = LabelMethod::kWindow;
  std::size_t window_size = 0;
  RougeMetric metric = RougeMetric::kRouge1;

  std::size_t positives() const;
  std::vector<std::size_t> positive_indices() const;
};

/// Partition the sentences into disjoint consecutive blocks of
/// `opts.window` and mark the best-scoring sentence of each block.
/// Ties go to the lowest index.
LabeledPair window_label(const CorpusPair& pair, const WindowOptions& opts = {});

/// Scan sentences in order; a sentence is marked (and appended to the running
/// extract) only when it strictly increases the metric of the extract.
LabeledPair greedy_sequential_label(const CorpusPair& pair,
                                    RougeMetric metric = RougeMetric::kRouge1);

struct LabelParams {
  LabelMethod method = LabelMethod::kWindow;
  WindowOptions window;  // window.metric is also used by the greedy labeler
};

struct LabelStats {
  std::vector<std::string> skipped_ids;   // empty gold summaries
  std::vector<double> positive_rates;     // per labeled document
  double mean_positive_rate() const;
};

/// Label every pair. Pairs with an empty gold summary are skipped and listed
/// in `stats`. The returned LabeledPairs point into `pairs`.
std::vector<LabeledPair> label_corpus(std::span<const CorpusPair> pairs, const LabelParams& params,
                                      LabelStats* stats = nullptr);

/// "<id>\t0101..." per line.
void write_label_file(const std::filesystem::path& path, std::span<const LabeledPair> labeled);

struct LabelRecord {
  std::string id;
  std::vector<int> labels;
};
std::vector<LabelRecord> read_label_file(const std::filesystem::path& path);

}  // namespace winsumm
