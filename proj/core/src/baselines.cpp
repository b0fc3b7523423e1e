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

#include "winsumm/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "winsumm/error.hpp"
#include "winsumm/rouge.hpp"

namespace winsumm {

std::size_t budget_count(std::size_t n, double fraction) {
  if (!(fraction > 0.0) || fraction > 1.0) throw UsageError("budget fraction must be in (0, 1]");
  if (n == 0) return 0;
  // Guard against 0.2 * 10 evaluating to 2.0000000000000004.
  const double raw = fraction * static_cast<double>(n);
  auto k = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  return std::clamp<std::size_t>(k, 1, n);
}

std::vector<std::size_t> lead_fraction(const Document& doc, double fraction) {
  std::vector<std::size_t> out(budget_count(doc.size(), fraction));
  std::iota(out.begin(), out.end(), std::size_t{0});
  return out;
}

double textrank_similarity(const Sentence& a, const Sentence& b) {
  const auto ta = rouge_tokens(a);
  const auto tb = rouge_tokens(b);
  const std::set<std::string> sa(ta.begin(), ta.end());
  const std::set<std::string> sb(tb.begin(), tb.end());
  std::size_t overlap = 0;
  for (const auto& w : sa) overlap += sb.count(w);
  if (overlap == 0) return 0.0;
  return static_cast<double>(overlap) /
         (std::log(1.0 + static_cast<double>(ta.size())) + std::log(1.0 + static_cast<double>(tb.size())));
}

std::vector<std::size_t> rank_order(const std::vector<double>& scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return order;
}

SentenceRanking textrank(const Document& doc, const TextRankOptions& opts) {
  const std::size_t n = doc.size();
  if (n == 0) throw UsageError("textrank: document has no sentences");
  std::vector<double> sim(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      sim[i * n + j] = sim[j * n + i] = textrank_similarity(doc.sentences[i], doc.sentences[j]);
  std::vector<double> out_mass(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out_mass[i] += sim[i * n + j];

  const double d = opts.damping;
  const double teleport = (1.0 - d) / static_cast<double>(n);
  std::vector<double> score(n, 1.0 / static_cast<double>(n)), next(n);
  SentenceRanking ranking;
  for (std::size_t it = 0; it < opts.max_iter; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double incoming = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (out_mass[j] > 0.0) incoming += sim[j * n + i] / out_mass[j] * score[j];
      next[i] = teleport + d * incoming;
    }
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) change += std::abs(next[i] - score[i]);
    score.swap(next);
    ranking.iterations = it + 1;
    ranking.residual = change;
    if (change < opts.eps) {
      ranking.converged = true;
      break;
    }
  }
  const double total = std::accumulate(score.begin(), score.end(), 0.0);
  for (double& s : score) s /= total;
  ranking.scores = std::move(score);
  ranking.order = rank_order(ranking.scores);
  return ranking;
}

}  // namespace winsumm
