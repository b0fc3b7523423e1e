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
#include <utility>
#include <vector>

#include "winsumm/corpus.hpp"
#include "winsumm/optim.hpp"
#include "winsumm/random.hpp"
#include "winsumm/tensor.hpp"

namespace winsumm {

enum class DocEncoder { kSimple, kHierarchical };

// How the summary-similarity term enters the sentence logit.
enum class NoveltyMode {
  kNegate,           // logit -= s^T W_novelty E  (similar to summary => lower score)
  kLiteralAdditive,  // logit += s^T W_novelty E
};

std::string_view to_string(DocEncoder e);
std::string_view to_string(NoveltyMode m);
DocEncoder parse_doc_encoder(std::string_view s);
NoveltyMode parse_novelty_mode(std::string_view s);

struct ModelConfig {
  std::size_t vocab_size = 2;
  std::size_t word_dim = 50;
  std::size_t lstm_hidden = 50;
  std::size_t attention_heads = 1;
  DocEncoder doc_encoder = DocEncoder::kSimple;
  std::size_t pos_buckets = 10;
  double w_pos_class = 85.0;
  double w_neg_class = 2.0;
  NoveltyMode novelty = NoveltyMode::kNegate;

  void validate() const;

  // Width of the per-sentence vector fed to the scorer (2 * hidden).
  std::size_t sentence_dim() const { return 2 * lstm_hidden; }
  // Width of the word-level sentence embedding (2 * hidden * heads when
  // hierarchical).
  std::size_t sentence_embedding_dim() const;
  std::size_t doc_dim() const;

  std::vector<std::pair<std::string, std::string>> to_pairs() const;
  // Unknown keys are rejected.
  static ModelConfig from_pairs(std::span<const std::pair<std::string, std::string>> pairs);

  bool operator==(const ModelConfig&) const = default;
};

struct LstmParams {
  Tensor w_x;  // [4h, in], gate blocks ordered input, forget, output, candidate
  Tensor w_h;  // [4h, h]
  Tensor b;    // [4h]

  std::size_t hidden() const { return b.size() / 4; }
};

struct RankerParams {
  Tensor embedding;  // [V, word_dim]
  LstmParams word_fwd, word_bwd;
  // hierarchical encoder
  Tensor word_attn;  // [k, 2h]
  LstmParams doc_fwd, doc_bwd;
  Tensor sent_attn;  // [k, 2h]
  // simple encoder
  Tensor doc_proj_w;  // [2h, 2h]
  Tensor doc_proj_b;  // [2h]
  // scorer
  Tensor content;   // [2h]
  Tensor salience;  // [doc_dim, 2h]
  Tensor novelty;   // [2h, 2h]
  Tensor position;  // [buckets]
  Tensor bias;      // [1]

  /// Weights uniform in [-0.1, 0.1], biases zero. Rows of `word_vectors`
  /// (when given) initialize the embedding table.
  static RankerParams init(const ModelConfig& config, Rng& rng,
                           const WordEmbeddings* word_vectors = nullptr);
  static RankerParams zeros(const ModelConfig& config);

  /// Every tensor used by `config`'s encoder, in a fixed order.
  std::vector<NamedParameter> named(const ModelConfig& config) const;
  RankerParams clone(const ModelConfig& config) const;
  void copy_values_from(const RankerParams& other, const ModelConfig& config);
};

struct LstmState {
  Tensor h;
  Tensor c;
};

LstmState lstm_zero_state(std::size_t hidden);
LstmState lstm_step(Tape& tape, const Tensor& x, const LstmState& prev, const LstmParams& params);

struct BiLstmOutput {
  Tensor states;    // [m, 2h]; row t is [forward h_t, backward h_t]
  Tensor last_fwd;  // forward state after the final step
  Tensor last_bwd;  // backward state after reaching the first step
};

/// Run both directions over the rows of `seq` ([m, in], m >= 1).
BiLstmOutput bilstm(Tape& tape, const Tensor& seq, const LstmParams& fwd, const LstmParams& bwd);

/// Word-level encoder over the real (unpadded) token ids of one sentence.
/// Simple: [last forward, last backward]. Hierarchical: attention pooling of
/// the biLSTM states with `attention_heads` rows, flattened row-major.
Tensor encode_sentence(Tape& tape, std::span<const int> token_ids, const RankerParams& params,
                       const ModelConfig& config);

/// ReLU(W * mean(E_s) + b).
Tensor doc_embed_simple(Tape& tape, std::span<const Tensor> sentence_embeddings,
                        const RankerParams& params);

struct HierarchicalDoc {
  Tensor embedding;        // flattened [k, 2h] attention pooling
  Tensor sentence_states;  // [n, 2h] document-level biLSTM states
  Tensor attention;        // [k, n]
};

HierarchicalDoc doc_embed_hierarchical(Tape& tape, std::span<const Tensor> sentence_embeddings,
                                       const RankerParams& params);

struct SummaryState {
  Tensor vector;
  std::size_t step = 0;
};

SummaryState initial_summary_state(std::size_t dim);
/// s' = s + p * e
SummaryState update_summary_state(Tape& tape, const SummaryState& state, const Tensor& prob,
                                  const Tensor& sentence);

/// Relative-position bucket of sentence i (0-based) among n.
std::size_t position_bucket(std::size_t i, std::size_t n, std::size_t buckets);

struct ScoreTerms {
  double content = 0.0;
  double position = 0.0;
  double salience = 0.0;
  double redundancy = 0.0;
};

struct DocumentScores {
  Tensor probs;  // [n_real]
  std::vector<ScoreTerms> terms;
};

/// Sequential scoring of the first n_real sentences of `doc`.
DocumentScores score_document_graph(Tape& tape, const ShapedDocument& doc,
                                    const RankerParams& params, const ModelConfig& config);

/// Inference-only scoring; returns p_1..p_n.
std::vector<double> score_document(const ShapedDocument& doc, const RankerParams& params,
                                   const ModelConfig& config);

inline constexpr double kProbClamp = 1e-7;

/// Plain-value weighted binary cross-entropy with positive magnitudes.
double weighted_bce_loss(std::span<const double> probs, std::span<const int> labels,
                         double w_pos_class, double w_neg_class);

/// Graph loss for one document; `labels` covers at least doc.n_real entries.
Tensor document_loss(Tape& tape, const ShapedDocument& doc, std::span<const int> labels,
                     const RankerParams& params, const ModelConfig& config);

struct Checkpoint {
  ModelConfig config;
  RankerParams params;
};

void save_checkpoint(const std::filesystem::path& path, const RankerParams& params,
                     const ModelConfig& config);
/// Reads the embedded configuration and the parameters it implies.
Checkpoint load_checkpoint(const std::filesystem::path& path);
/// As above, but fails unless the file's parameters match `expected`.
RankerParams load_checkpoint(const std::filesystem::path& path, const ModelConfig& expected);

}  // namespace winsumm
