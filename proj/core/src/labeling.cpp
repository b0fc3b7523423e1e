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

#include "winsumm/labeling.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "winsumm/error.hpp"
#include "winsumm/rouge.hpp"

namespace winsumm {

std::string_view to_string(LabelMethod m) {
  return m == LabelMethod::kWindow ? "window" : "greedy";
}

std::string_view to_string(RougeMetric m) {
  switch (m) {
    case RougeMetric::kRouge1: return "rouge1";
    case RougeMetric::kRouge2: return "rouge2";
    case RougeMetric::kRougeL: return "rougeL";
  }
  return "rouge1";
}

std::string_view to_string(WindowScoring s) {
  return s == WindowScoring::kSingleton ? "singleton" : "marginal-gain";
}

LabelMethod parse_label_method(std::string_view s) {
  if (s == "window") return LabelMethod::kWindow;
  if (s == "greedy") return LabelMethod::kGreedy;
  throw UsageError("unknown label method: " + std::string(s));
}

RougeMetric parse_rouge_metric(std::string_view s) {
  if (s == "rouge1") return RougeMetric::kRouge1;
  if (s == "rouge2") return RougeMetric::kRouge2;
  if (s == "rougeL" || s == "rougel") return RougeMetric::kRougeL;
  throw UsageError("unknown ROUGE metric: " + std::string(s));
}

WindowScoring parse_window_scoring(std::string_view s) {
  if (s == "singleton") return WindowScoring::kSingleton;
  if (s == "marginal-gain" || s == "marginal") return WindowScoring::kMarginalGain;
  throw UsageError("unknown window scoring: " + std::string(s));
}

double rouge_metric(RougeMetric metric, std::span<const std::string> candidate,
                    std::span<const std::string> reference) {
  switch (metric) {
    case RougeMetric::kRouge1: return rouge_n_recall(candidate, reference, 1);
    case RougeMetric::kRouge2: return rouge_n_recall(candidate, reference, 2);
    case RougeMetric::kRougeL: return rouge_l_recall(candidate, reference);
  }
  return 0.0;
}

std::size_t LabeledPair::positives() const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
}

std::vector<std::size_t> LabeledPair::positive_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == 1) out.push_back(i);
  return out;
}

LabeledPair window_label(const CorpusPair& pair, const WindowOptions& opts) {
  if (opts.window < 1) throw UsageError("window size must be >= 1");
  const auto gold = rouge_tokens(pair.gold);
  const std::size_t n = pair.doc.size();

  LabeledPair out;
  out.pair = &pair;
  out.labels.assign(n, 0);
  out.method = LabelMethod::kWindow;
  out.window_size = opts.window;
  out.metric = opts.metric;

  std::vector<std::string> extract;  // positives so far, for marginal-gain scoring
  for (std::size_t begin = 0; begin < n; begin += opts.window) {
    const std::size_t end = std::min(n, begin + opts.window);
    std::size_t best = begin;
    double best_score = -1.0;
    std::vector<std::string> best_tokens;
    for (std::size_t i = begin; i < end; ++i) {
      auto toks = rouge_tokens(pair.doc.sentences[i]);
      if (opts.scoring == WindowScoring::kMarginalGain) toks.insert(toks.begin(), extract.begin(), extract.end());
      const double score = rouge_metric(opts.metric, toks, gold);
      if (score > best_score) {
        best_score = score;
        best = i;
        best_tokens = std::move(toks);
      }
    }
    if (opts.scoring == WindowScoring::kMarginalGain) {
      const double base = rouge_metric(opts.metric, extract, gold);
      best_score -= base;
    }
    if (best_score == 0.0 && !opts.label_empty_blocks) continue;
    out.labels[best] = 1;
    if (opts.scoring == WindowScoring::kMarginalGain) extract = std::move(best_tokens);
  }
  return out;
}

LabeledPair greedy_sequential_label(const CorpusPair& pair, RougeMetric metric) {
  const auto gold = rouge_tokens(pair.gold);
  LabeledPair out;
  out.pair = &pair;
  out.labels.assign(pair.doc.size(), 0);
  out.method = LabelMethod::kGreedy;
  out.metric = metric;

  std::vector<std::string> extract;
  double current = 0.0;
  for (std::size_t i = 0; i < pair.doc.size(); ++i) {
    auto candidate = extract;
    const auto toks = rouge_tokens(pair.doc.sentences[i]);
    candidate.insert(candidate.end(), toks.begin(), toks.end());
    const double score = rouge_metric(metric, candidate, gold);
    if (score > current) {
      out.labels[i] = 1;
      current = score;
      extract = std::move(candidate);
    }
  }
  return out;
}

double LabelStats::mean_positive_rate() const {
  if (positive_rates.empty()) return 0.0;
  return std::accumulate(positive_rates.begin(), positive_rates.end(), 0.0) /
         static_cast<double>(positive_rates.size());
}

std::vector<LabeledPair> label_corpus(std::span<const CorpusPair> pairs, const LabelParams& params,
                                      LabelStats* stats) {
  std::vector<LabeledPair> out;
  out.reserve(pairs.size());
  for (const auto& pair : pairs) {
    if (rouge_tokens(pair.gold).empty() || pair.doc.size() == 0) {
      if (stats) stats->skipped_ids.push_back(pair.doc.id);
      continue;
    }
    out.push_back(params.method == LabelMethod::kWindow
                      ? window_label(pair, params.window)
                      : greedy_sequential_label(pair, params.window.metric));
    if (stats)
      stats->positive_rates.push_back(static_cast<double>(out.back().positives()) /
                                      static_cast<double>(pair.doc.size()));
  }
  return out;
}

void write_label_file(const std::filesystem::path& path, std::span<const LabeledPair> labeled) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write label file: " + path.string());
  for (const auto& lp : labeled) {
    out << lp.pair->doc.id << '\t';
    for (int y : lp.labels) out << (y ? '1' : '0');
    out << '\n';
  }
}

std::vector<LabelRecord> read_label_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read label file: " + path.string());
  std::vector<LabelRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": missing tab");
    LabelRecord rec;
    rec.id = line.substr(0, tab);
    for (char c : std::string_view(line).substr(tab + 1)) {
      if (c != '0' && c != '1')
        throw DataError(path.string() + ":" + std::to_string(line_no) + ": label must be 0 or 1");
      rec.labels.push_back(c - '0');
    }
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace winsumm
