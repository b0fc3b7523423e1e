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
#include <span>
#include <string>
#include <vector>

#include "winsumm/corpus.hpp"

namespace winsumm {

/// Clipped n-gram overlap and the reference n-gram total.
struct NgramOverlap {
  std::size_t matched = 0;
  std::size_t reference_total = 0;

  double recall() const {
    return reference_total == 0 ? 0.0
                                : static_cast<double>(matched) / static_cast<double>(reference_total);
  }
};

NgramOverlap rouge_n_overlap(std::span<const std::string> candidate,
                             std::span<const std::string> reference, std::size_t n);

/// Sum over reference n-grams g of min(count_cand(g), count_ref(g)), divided
/// by the number of reference n-grams. Zero when the reference is shorter
/// than n.
double rouge_n_recall(std::span<const std::string> candidate,
                      std::span<const std::string> reference, std::size_t n);

/// Longest common subsequence length; O(|a||b|) time, O(min(|a|,|b|)) memory.
std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b);

/// lcs_length / |reference|; zero for an empty reference.
double rouge_l_recall(std::span<const std::string> candidate,
                      std::span<const std::string> reference);

struct RougeScore {
  double r1 = 0.0;
  double r2 = 0.0;
  double rl = 0.0;
};

RougeScore rouge_recall(std::span<const std::string> candidate,
                        std::span<const std::string> reference);

/// Normalized token stream used for scoring: all `norm` forms of the given
/// sentences, in order, with single-character punctuation removed.
std::vector<std::string> rouge_tokens(const Sentence& sentence);
std::vector<std::string> rouge_tokens(const Document& doc);
std::vector<std::string> rouge_tokens(const Document& doc, std::span<const std::size_t> sentence_ids);

}  // namespace winsumm
