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
#include <vector>

#include "winsumm/corpus.hpp"

namespace winsumm {

/// First ceil(fraction * n) sentence indices, in order.
std::vector<std::size_t> lead_fraction(const Document& doc, double fraction = 0.2);

/// Number of sentences a budget fraction allows: ceil(fraction * n), at least
/// one for non-empty documents and never more than n.
std::size_t budget_count(std::size_t n, double fraction);

struct SentenceRanking {
  std::vector<double> scores;
  std::vector<std::size_t> order;  // descending score, ties by ascending index
  std::size_t iterations = 0;
  double residual = 0.0;  // L1 change of the last iteration
  bool converged = false;
};

struct TextRankOptions {
  double damping = 0.85;
  double eps = 1e-8;
  std::size_t max_iter = 200;
};

/// Sentence similarity: shared distinct normalized words divided by
/// log(1+|s_i|) + log(1+|s_j|), punctuation excluded.
double textrank_similarity(const Sentence& a, const Sentence& b);

/// Weighted PageRank over the sentence-similarity graph. Nodes without edges
/// keep only the teleport mass. Returned scores are normalized to sum to 1.
SentenceRanking textrank(const Document& doc, const TextRankOptions& opts = {});

/// Indices sorted by descending score, ties by ascending index.
std::vector<std::size_t> rank_order(const std::vector<double>& scores);

}  // namespace winsumm
