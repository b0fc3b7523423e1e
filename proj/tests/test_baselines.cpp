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
#include <numeric>

#include "winsumm/baselines.hpp"
#include "winsumm/error.hpp"
#include "winsumm/synthetic.hpp"

namespace winsumm {
namespace {

Document numbered(std::size_t n) {
  std::string text;
  for (std::size_t i = 0; i < n; ++i) text += "Sentence w" + std::to_string(i) + ". ";
  return make_document("n", text);
}

TEST(Lead, Fractions) {
  EXPECT_EQ(lead_fraction(numbered(10)), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(lead_fraction(numbered(1)), (std::vector<std::size_t>{0}));
  EXPECT_EQ(lead_fraction(numbered(25)), (std::vector<std::size_t>{0, 1, 2, 3, 4}));
  EXPECT_EQ(lead_fraction(numbered(7), 1.0).size(), 7u);
  EXPECT_THROW(lead_fraction(numbered(5), 0.0), UsageError);
  EXPECT_THROW(lead_fraction(numbered(5), 1.5), UsageError);
}

TEST(Lead, BudgetIsCeilForManySizes) {
  for (std::size_t n = 1; n <= 60; ++n) {
    const auto want = static_cast<std::size_t>(std::ceil(0.2 * static_cast<double>(n) - 1e-9));
    EXPECT_EQ(budget_count(n, 0.2), std::max<std::size_t>(1, want)) << n;
  }
  EXPECT_EQ(budget_count(10, 0.2), 2u);  // 0.2 * 10 is not 2.0000000000000004
  EXPECT_EQ(budget_count(20, 0.1), 2u);
}

TEST(TextRank, SingleSentence) {
  const auto r = textrank(make_document("x", "Only one here."));
  ASSERT_EQ(r.scores.size(), 1u);
  EXPECT_NEAR(r.scores[0], 1.0, 1e-12);
  EXPECT_TRUE(r.converged);
}

TEST(TextRank, DuplicatePairOutranksDisjoint) {
  const auto r = textrank(make_document("x", "Neural ranking model. Neural ranking model. Bananas grow tall."));
  // Each duplicate's only neighbour is its twin, so its fixed point is
  // x = (1-d)/3 + d*x, i.e. 1/3; the isolated sentence keeps (1-d)/3.
  const double d = 0.85;
  const double dup = 1.0 / 3.0, lone = (1.0 - d) / 3.0;
  const double total = 2 * dup + lone;
  EXPECT_NEAR(r.scores[0], dup / total, 1e-7);
  EXPECT_NEAR(r.scores[1], dup / total, 1e-7);
  EXPECT_NEAR(r.scores[2], lone / total, 1e-7);
  EXPECT_EQ(r.order, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(TextRank, DisjointIsUniform) {
  const auto r = textrank(make_document("x", "Alpha beta. Gamma delta. Eps zeta. Eta theta."));
  for (double s : r.scores) EXPECT_NEAR(s, 0.25, 1e-12);
  EXPECT_EQ(r.order, (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(TextRank, SimilarityFormulaAndSymmetry) {
  const auto doc = make_document("x", "Cat cat dog. Dog bird cat fish.");
  const double want = 2.0 / (std::log(4.0) + std::log(5.0));
  EXPECT_DOUBLE_EQ(textrank_similarity(doc.sentences[0], doc.sentences[1]), want);
  EXPECT_DOUBLE_EQ(textrank_similarity(doc.sentences[1], doc.sentences[0]), want);
}

TEST(TextRank, SumsToOneConvergesAndIsPermutationEquivariant) {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const auto text = synthetic::random_pair(rng, 25, 8, 12, "t");
    const auto doc = make_document("t", text.paper);
    const auto r = textrank(doc);
    EXPECT_NEAR(std::accumulate(r.scores.begin(), r.scores.end(), 0.0), 1.0, 1e-6);
    EXPECT_TRUE(r.converged);
    EXPECT_LE(r.iterations, 200u);

    // Reverse the sentence order: scores follow their sentences.
    std::string reversed;
    for (std::size_t i = doc.size(); i-- > 0;) reversed += doc.sentences[i].text + " ";
    const auto rdoc = make_document("r", reversed);
    if (rdoc.size() != doc.size()) continue;
    const auto rr = textrank(rdoc);
    for (std::size_t i = 0; i < doc.size(); ++i)
      EXPECT_NEAR(r.scores[i], rr.scores[doc.size() - 1 - i], 1e-9);
  }
}

TEST(RankOrder, TiesByIndex) {
  EXPECT_EQ(rank_order({0.2, 0.5, 0.2, 0.5}), (std::vector<std::size_t>{1, 3, 0, 2}));
}

}  // namespace
}  // namespace winsumm
