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


#include <benchmark/benchmark.h>

#include "winsumm/baselines.hpp"
#include "winsumm/labeling.hpp"
#include "winsumm/model.hpp"
#include "winsumm/rouge.hpp"
#include "winsumm/synthetic.hpp"

namespace winsumm {
namespace {

std::vector<std::string> tokens(Rng& rng, std::size_t n, std::size_t alphabet) {
  std::vector<std::string> out(n);
  for (auto& t : out) t = "w" + std::to_string(rng.below(alphabet));
  return out;
}

void BM_RougeN(benchmark::State& state) {
  Rng rng(1);
  const auto cand = tokens(rng, static_cast<std::size_t>(state.range(0)), 500);
  const auto ref = tokens(rng, static_cast<std::size_t>(state.range(0)), 500);
  for (auto _ : state) benchmark::DoNotOptimize(rouge_n_recall(cand, ref, 2));
}
BENCHMARK(BM_RougeN)->Arg(100)->Arg(1000)->Arg(10000);

void BM_RougeL(benchmark::State& state) {
  Rng rng(2);
  const auto cand = tokens(rng, static_cast<std::size_t>(state.range(0)), 500);
  const auto ref = tokens(rng, static_cast<std::size_t>(state.range(0)), 500);
  for (auto _ : state) benchmark::DoNotOptimize(rouge_l_recall(cand, ref));
}
BENCHMARK(BM_RougeL)->Arg(100)->Arg(1000);

CorpusPair sectioned_pair() {
  return synthetic::materialize(synthetic::sectioned_corpus({.docs = 1})).front();
}

void BM_WindowLabel(benchmark::State& state) {
  const auto pair = sectioned_pair();
  for (auto _ : state) benchmark::DoNotOptimize(window_label(pair, {.window = 10}));
}
BENCHMARK(BM_WindowLabel);

void BM_GreedyLabel(benchmark::State& state) {
  const auto pair = sectioned_pair();
  for (auto _ : state) benchmark::DoNotOptimize(greedy_sequential_label(pair));
}
BENCHMARK(BM_GreedyLabel);

void BM_TextRank(benchmark::State& state) {
  const auto pair = sectioned_pair();
  for (auto _ : state) benchmark::DoNotOptimize(textrank(pair.doc));
}
BENCHMARK(BM_TextRank);

struct RankerFixture {
  ModelConfig config;
  ShapedDocument doc;
  RankerParams params;
  std::vector<int> labels;

  explicit RankerFixture(DocEncoder enc) {
    const auto pair = sectioned_pair();
    const auto vocab = Vocabulary::build(std::span<const CorpusPair>(&pair, 1));
    config.vocab_size = vocab.size();
    config.word_dim = 16;
    config.lstm_hidden = 16;
    config.doc_encoder = enc;
    doc = shape_document(pair.doc, vocab);
    Rng rng(3);
    params = RankerParams::init(config, rng);
    labels = window_label(pair, {.window = 10}).labels;
  }
};

void BM_RankerForward(benchmark::State& state) {
  const RankerFixture f(static_cast<DocEncoder>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(score_document(f.doc, f.params, f.config));
  state.SetLabel(std::string(to_string(f.config.doc_encoder)));
}
BENCHMARK(BM_RankerForward)
    ->Arg(static_cast<int>(DocEncoder::kSimple))
    ->Arg(static_cast<int>(DocEncoder::kHierarchical))
    ->Unit(benchmark::kMillisecond);

void BM_RankerForwardBackward(benchmark::State& state) {
  RankerFixture f(static_cast<DocEncoder>(state.range(0)));
  for (auto _ : state) {
    Tape tape;
    tape.backward(document_loss(tape, f.doc, f.labels, f.params, f.config));
  }
  state.SetLabel(std::string(to_string(f.config.doc_encoder)));
}
BENCHMARK(BM_RankerForwardBackward)
    ->Arg(static_cast<int>(DocEncoder::kSimple))
    ->Arg(static_cast<int>(DocEncoder::kHierarchical))
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace winsumm

BENCHMARK_MAIN();
