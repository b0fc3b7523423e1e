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

#include "winsumm/rouge.hpp"

#include <algorithm>
#include <map>

#include "winsumm/error.hpp"

namespace winsumm {
namespace {

using Ngram = std::vector<std::string>;

std::map<Ngram, std::size_t> count_ngrams(std::span<const std::string> tokens, std::size_t n) {
  std::map<Ngram, std::size_t> counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i)
    ++counts[Ngram(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                   tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  return counts;
}

}  // namespace

NgramOverlap rouge_n_overlap(std::span<const std::string> candidate,
                             std::span<const std::string> reference, std::size_t n) {
  if (n < 1) throw UsageError("rouge_n: n must be >= 1");
  NgramOverlap out;
  if (reference.size() < n) return out;
  const auto ref = count_ngrams(reference, n);
  const auto cand = count_ngrams(candidate, n);
  for (const auto& [gram, count] : ref) {
    out.reference_total += count;
    if (auto it = cand.find(gram); it != cand.end()) out.matched += std::min(count, it->second);
  }
  return out;
}

double rouge_n_recall(std::span<const std::string> candidate,
                      std::span<const std::string> reference, std::size_t n) {
  return rouge_n_overlap(candidate, reference, n).recall();
}

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.size() < b.size()) std::swap(a, b);
  // Rolling row over the shorter sequence.
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (const auto& x : a) {
    std::size_t diag = 0;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = x == b[j - 1] ? diag + 1 : std::max(row[j], row[j - 1]);
      diag = up;
    }
  }
  return row[b.size()];
}

double rouge_l_recall(std::span<const std::string> candidate,
                      std::span<const std::string> reference) {
  if (reference.empty()) return 0.0;
  return static_cast<double>(lcs_length(candidate, reference)) /
         static_cast<double>(reference.size());
}

RougeScore rouge_recall(std::span<const std::string> candidate,
                        std::span<const std::string> reference) {
  return {rouge_n_recall(candidate, reference, 1), rouge_n_recall(candidate, reference, 2),
          rouge_l_recall(candidate, reference)};
}

std::vector<std::string> rouge_tokens(const Sentence& sentence) {
  std::vector<std::string> out;
  out.reserve(sentence.tokens.size());
  for (const auto& tok : sentence.tokens)
    if (!is_punctuation(tok.norm)) out.push_back(tok.norm);
  return out;
}

std::vector<std::string> rouge_tokens(const Document& doc) {
  std::vector<std::string> out;
  for (const auto& sent : doc.sentences) {
    auto toks = rouge_tokens(sent);
    out.insert(out.end(), toks.begin(), toks.end());
  }
  return out;
}

std::vector<std::string> rouge_tokens(const Document& doc, std::span<const std::size_t> sentence_ids) {
  std::vector<std::string> out;
  for (auto id : sentence_ids) {
    auto toks = rouge_tokens(doc.sentences.at(id));
    out.insert(out.end(), toks.begin(), toks.end());
  }
  return out;
}

}  // namespace winsumm
