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

#include "winsumm/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "winsumm/error.hpp"

namespace winsumm {

std::string_view to_string(DocEncoder e) {
  return e == DocEncoder::kSimple ? "simple" : "hierarchical";
}

std::string_view to_string(NoveltyMode m) {
  return m == NoveltyMode::kNegate ? "negate" : "literal-additive";
}

DocEncoder parse_doc_encoder(std::string_view s) {
  if (s == "simple") return DocEncoder::kSimple;
  if (s == "hierarchical") return DocEncoder::kHierarchical;
  throw UsageError("unknown document encoder: " + std::string(s));
}

NoveltyMode parse_novelty_mode(std::string_view s) {
  if (s == "negate") return NoveltyMode::kNegate;
  if (s == "literal-additive") return NoveltyMode::kLiteralAdditive;
  throw UsageError("unknown novelty mode: " + std::string(s));
}

// ---------------------------------------------------------------------------
// ModelConfig

void ModelConfig::validate() const {
  if (vocab_size < 2 || word_dim < 1 || lstm_hidden < 1 || attention_heads < 1 || pos_buckets < 1)
    throw UsageError("model dimensions must be >= 1 (vocab_size >= 2)");
  if (!(w_pos_class > 0.0) || !(w_neg_class > 0.0))
    throw UsageError("loss class weights must be positive");
}

std::size_t ModelConfig::sentence_embedding_dim() const {
  return doc_encoder == DocEncoder::kHierarchical ? 2 * lstm_hidden * attention_heads
                                                  : 2 * lstm_hidden;
}

std::size_t ModelConfig::doc_dim() const {
  return doc_encoder == DocEncoder::kHierarchical ? 2 * lstm_hidden * attention_heads
                                                  : 2 * lstm_hidden;
}

namespace {

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

std::size_t parse_size(const std::string& key, const std::string& v) {
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw DataError("config key '" + key + "': expected an integer, got '" + v + "'");
  return out;
}

double parse_real(const std::string& key, const std::string& v) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw DataError("config key '" + key + "': expected a number, got '" + v + "'");
  return out;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> ModelConfig::to_pairs() const {
  return {
      {"vocab_size", std::to_string(vocab_size)},
      {"word_dim", std::to_string(word_dim)},
      {"lstm_hidden", std::to_string(lstm_hidden)},
      {"attention_heads", std::to_string(attention_heads)},
      {"doc_encoder", std::string(to_string(doc_encoder))},
      {"pos_buckets", std::to_string(pos_buckets)},
      {"w_pos_class", format_double(w_pos_class)},
      {"w_neg_class", format_double(w_neg_class)},
      {"novelty", std::string(to_string(novelty))},
  };
}

ModelConfig ModelConfig::from_pairs(std::span<const std::pair<std::string, std::string>> pairs) {
  ModelConfig c;
  for (const auto& [k, v] : pairs) {
    if (k == "vocab_size") c.vocab_size = parse_size(k, v);
    else if (k == "word_dim") c.word_dim = parse_size(k, v);
    else if (k == "lstm_hidden") c.lstm_hidden = parse_size(k, v);
    else if (k == "attention_heads") c.attention_heads = parse_size(k, v);
    else if (k == "doc_encoder") c.doc_encoder = parse_doc_encoder(v);
    else if (k == "pos_buckets") c.pos_buckets = parse_size(k, v);
    else if (k == "w_pos_class") c.w_pos_class = parse_real(k, v);
    else if (k == "w_neg_class") c.w_neg_class = parse_real(k, v);
    else if (k == "novelty") c.novelty = parse_novelty_mode(v);
    else throw DataError("unknown model config key: " + k);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Parameters

namespace {

Tensor uniform(Shape shape, Rng& rng) {
  Tensor t = Tensor::zeros(std::move(shape), true);
  for (double& v : t.value()) v = rng.uniform(-0.1, 0.1);
  return t;
}

Tensor zero_param(Shape shape) { return Tensor::zeros(std::move(shape), true); }

LstmParams lstm_params(std::size_t in, std::size_t hidden, Rng* rng) {
  LstmParams p;
  p.w_x = rng ? uniform({4 * hidden, in}, *rng) : zero_param({4 * hidden, in});
  p.w_h = rng ? uniform({4 * hidden, hidden}, *rng) : zero_param({4 * hidden, hidden});
  p.b = zero_param({4 * hidden});
  return p;
}

RankerParams build(const ModelConfig& c, Rng* rng) {
  c.validate();
  auto weight = [&](Shape s) { return rng ? uniform(std::move(s), *rng) : zero_param(std::move(s)); };
  const std::size_t h = c.lstm_hidden, r = c.sentence_dim();
  RankerParams p;
  p.embedding = weight({c.vocab_size, c.word_dim});
  p.word_fwd = lstm_params(c.word_dim, h, rng);
  p.word_bwd = lstm_params(c.word_dim, h, rng);
  if (c.doc_encoder == DocEncoder::kHierarchical) {
    p.word_attn = weight({c.attention_heads, 2 * h});
    p.doc_fwd = lstm_params(c.sentence_embedding_dim(), h, rng);
    p.doc_bwd = lstm_params(c.sentence_embedding_dim(), h, rng);
    p.sent_attn = weight({c.attention_heads, 2 * h});
  } else {
    p.doc_proj_w = weight({r, r});
    p.doc_proj_b = zero_param({r});
  }
  p.content = weight({r});
  p.salience = weight({c.doc_dim(), r});
  p.novelty = weight({r, r});
  p.position = weight({c.pos_buckets});
  p.bias = zero_param({1});
  return p;
}

void add_lstm(std::vector<NamedParameter>& out, const std::string& prefix, const LstmParams& p) {
  out.push_back({prefix + ".w_x", p.w_x});
  out.push_back({prefix + ".w_h", p.w_h});
  out.push_back({prefix + ".b", p.b});
}

}  // namespace

RankerParams RankerParams::init(const ModelConfig& config, Rng& rng,
                                const WordEmbeddings* word_vectors) {
  RankerParams p = build(config, &rng);
  if (word_vectors) {
    if (word_vectors->dim != config.word_dim || word_vectors->rows() != config.vocab_size)
      throw ShapeError("word vectors are " + std::to_string(word_vectors->rows()) + "x" +
                       std::to_string(word_vectors->dim) + ", model expects " +
                       std::to_string(config.vocab_size) + "x" + std::to_string(config.word_dim));
    std::copy(word_vectors->matrix.begin(), word_vectors->matrix.end(), p.embedding.value().begin());
  }
  std::fill_n(p.embedding.value().begin(), config.word_dim, 0.0);  // PAD row
  return p;
}

RankerParams RankerParams::zeros(const ModelConfig& config) { return build(config, nullptr); }

std::vector<NamedParameter> RankerParams::named(const ModelConfig& config) const {
  std::vector<NamedParameter> out;
  out.push_back({"embedding", embedding});
  add_lstm(out, "word_lstm_fwd", word_fwd);
  add_lstm(out, "word_lstm_bwd", word_bwd);
  if (config.doc_encoder == DocEncoder::kHierarchical) {
    out.push_back({"word_attn", word_attn});
    add_lstm(out, "doc_lstm_fwd", doc_fwd);
    add_lstm(out, "doc_lstm_bwd", doc_bwd);
    out.push_back({"sent_attn", sent_attn});
  } else {
    out.push_back({"doc_proj.w", doc_proj_w});
    out.push_back({"doc_proj.b", doc_proj_b});
  }
  out.push_back({"content", content});
  out.push_back({"salience", salience});
  out.push_back({"novelty", novelty});
  out.push_back({"position", position});
  out.push_back({"bias", bias});
  return out;
}

RankerParams RankerParams::clone(const ModelConfig& config) const {
  RankerParams copy = zeros(config);
  copy.copy_values_from(*this, config);
  return copy;
}

void RankerParams::copy_values_from(const RankerParams& other, const ModelConfig& config) {
  auto dst = named(config);
  auto src = other.named(config);
  for (std::size_t i = 0; i < dst.size(); ++i) {
    if (dst[i].tensor.shape() != src[i].tensor.shape())
      throw ShapeError("parameter '" + dst[i].name + "' shape mismatch");
    auto from = src[i].tensor.value();
    std::copy(from.begin(), from.end(), dst[i].tensor.value().begin());
  }
}

// ---------------------------------------------------------------------------
// Encoders

LstmState lstm_zero_state(std::size_t hidden) {
  return {Tensor::zeros({hidden}), Tensor::zeros({hidden})};
}

namespace {

// One LSTM cell given the precomputed input projection W_x x.
LstmState lstm_cell(Tape& tape, const Tensor& x_proj, const LstmState& prev, const LstmParams& p) {
  const std::size_t h = p.hidden();
  const Tensor gates = tape.add(tape.add(x_proj, tape.matmul(p.w_h, prev.h)), p.b);
  const Tensor ifo = tape.sigmoid(tape.slice(gates, 0, 3 * h));
  const Tensor in_gate = tape.slice(ifo, 0, h);
  const Tensor forget_gate = tape.slice(ifo, h, h);
  const Tensor out_gate = tape.slice(ifo, 2 * h, h);
  const Tensor candidate = tape.tanh(tape.slice(gates, 3 * h, h));
  LstmState next;
  next.c = tape.add(tape.mul(forget_gate, prev.c), tape.mul(in_gate, candidate));
  next.h = tape.mul(out_gate, tape.tanh(next.c));
  return next;
}

}  // namespace

LstmState lstm_step(Tape& tape, const Tensor& x, const LstmState& prev, const LstmParams& params) {
  if (prev.h.size() != params.hidden() || prev.c.size() != params.hidden())
    throw ShapeError("lstm_step: state width " + std::to_string(prev.h.size()) +
                     " does not match hidden size " + std::to_string(params.hidden()));
  return lstm_cell(tape, tape.matmul(params.w_x, x), prev, params);
}

BiLstmOutput bilstm(Tape& tape, const Tensor& seq, const LstmParams& fwd, const LstmParams& bwd) {
  if (seq.rank() != 2 || seq.rows() == 0)
    throw ShapeError("bilstm: expected a non-empty [m, in] sequence, got " + shape_string(seq.shape()));
  const std::size_t m = seq.rows();
  const Tensor proj_f = tape.matmul(seq, tape.transpose(fwd.w_x));
  const Tensor proj_b = tape.matmul(seq, tape.transpose(bwd.w_x));

  std::vector<Tensor> hf(m), hb(m);
  LstmState state = lstm_zero_state(fwd.hidden());
  for (std::size_t t = 0; t < m; ++t) {
    state = lstm_cell(tape, tape.row(proj_f, t), state, fwd);
    hf[t] = state.h;
  }
  state = lstm_zero_state(bwd.hidden());
  for (std::size_t t = m; t-- > 0;) {
    state = lstm_cell(tape, tape.row(proj_b, t), state, bwd);
    hb[t] = state.h;
  }

  std::vector<Tensor> rows(m);
  for (std::size_t t = 0; t < m; ++t) rows[t] = tape.concat({hf[t], hb[t]});
  return {tape.stack(rows), hf[m - 1], hb[0]};
}

namespace {

// softmax(W_attn H^T) H, flattened.
Tensor attention_pool(Tape& tape, const Tensor& attn, const Tensor& states, Tensor* weights = nullptr) {
  const Tensor a = tape.softmax(tape.matmul(attn, tape.transpose(states)));
  if (weights) *weights = a;
  const Tensor pooled = tape.matmul(a, states);
  return tape.reshape(pooled, {pooled.size()});
}

}  // namespace

Tensor encode_sentence(Tape& tape, std::span<const int> token_ids, const RankerParams& params,
                       const ModelConfig& config) {
  if (token_ids.empty()) throw ShapeError("encode_sentence: sentence has no tokens");
  const Tensor words = tape.embedding(params.embedding, token_ids);
  const BiLstmOutput enc = bilstm(tape, words, params.word_fwd, params.word_bwd);
  if (config.doc_encoder == DocEncoder::kSimple) return tape.concat({enc.last_fwd, enc.last_bwd});
  return attention_pool(tape, params.word_attn, enc.states);
}

Tensor doc_embed_simple(Tape& tape, std::span<const Tensor> sentence_embeddings,
                        const RankerParams& params) {
  if (sentence_embeddings.empty()) throw ShapeError("doc_embed_simple: no sentences");
  const Tensor mean = tape.mean(tape.stack(sentence_embeddings), 0);
  return tape.relu(tape.add(tape.matmul(params.doc_proj_w, mean), params.doc_proj_b));
}

HierarchicalDoc doc_embed_hierarchical(Tape& tape, std::span<const Tensor> sentence_embeddings,
                                       const RankerParams& params) {
  if (sentence_embeddings.empty()) throw ShapeError("doc_embed_hierarchical: no sentences");
  const BiLstmOutput enc = bilstm(tape, tape.stack(sentence_embeddings), params.doc_fwd, params.doc_bwd);
  HierarchicalDoc out;
  out.sentence_states = enc.states;
  out.embedding = attention_pool(tape, params.sent_attn, enc.states, &out.attention);
  return out;
}

SummaryState initial_summary_state(std::size_t dim) { return {Tensor::zeros({dim}), 0}; }

SummaryState update_summary_state(Tape& tape, const SummaryState& state, const Tensor& prob,
                                  const Tensor& sentence) {
  if (sentence.shape() != state.vector.shape())
    throw ShapeError("update_summary_state: summary " + shape_string(state.vector.shape()) +
                     " vs sentence " + shape_string(sentence.shape()));
  return {tape.add(state.vector, tape.scale(sentence, prob)), state.step + 1};
}

std::size_t position_bucket(std::size_t i, std::size_t n, std::size_t buckets) {
  if (n == 0 || buckets == 0) return 0;
  return std::min(buckets - 1, i * buckets / n);
}

DocumentScores score_document_graph(Tape& tape, const ShapedDocument& doc,
                                    const RankerParams& params, const ModelConfig& config) {
  const std::size_t n = doc.n_real;
  if (n == 0) throw ShapeError("score_document: document has no sentences");

  std::vector<Tensor> embeddings(n);
  for (std::size_t i = 0; i < n; ++i)
    embeddings[i] = encode_sentence(tape, doc.sentence(i), params, config);

  Tensor doc_embedding;
  std::vector<Tensor> reps;
  if (config.doc_encoder == DocEncoder::kSimple) {
    doc_embedding = doc_embed_simple(tape, embeddings, params);
    reps = embeddings;
  } else {
    const HierarchicalDoc h = doc_embed_hierarchical(tape, embeddings, params);
    doc_embedding = h.embedding;
    reps.reserve(n);
    for (std::size_t i = 0; i < n; ++i) reps.push_back(tape.row(h.sentence_states, i));
  }

  const Tensor bias = tape.element(params.bias, 0);
  SummaryState summary = initial_summary_state(config.sentence_dim());
  std::vector<Tensor> probs;
  DocumentScores out;
  probs.reserve(n);
  out.terms.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Tensor& e = reps[i];
    const Tensor content = tape.dot(params.content, e);
    const Tensor pos = tape.element(params.position, position_bucket(i, n, config.pos_buckets));
    const Tensor salience = tape.dot(doc_embedding, tape.matmul(params.salience, e));
    const Tensor redundancy = tape.dot(summary.vector, tape.matmul(params.novelty, e));
    Tensor logit = tape.add(tape.add(content, pos), salience);
    logit = config.novelty == NoveltyMode::kNegate ? tape.sub(logit, redundancy)
                                                   : tape.add(logit, redundancy);
    const Tensor p = tape.sigmoid(tape.add(logit, bias));
    out.terms.push_back({content.item(), pos.item(), salience.item(), redundancy.item()});
    probs.push_back(p);
    summary = update_summary_state(tape, summary, p, e);
  }
  out.probs = tape.concat(probs);
  return out;
}

std::vector<double> score_document(const ShapedDocument& doc, const RankerParams& params,
                                   const ModelConfig& config) {
  Tape tape(false);
  const DocumentScores scores = score_document_graph(tape, doc, params, config);
  return {scores.probs.value().begin(), scores.probs.value().end()};
}

double weighted_bce_loss(std::span<const double> probs, std::span<const int> labels,
                         double w_pos_class, double w_neg_class) {
  if (probs.size() != labels.size())
    throw ShapeError("weighted_bce_loss: " + std::to_string(probs.size()) + " probabilities for " +
                     std::to_string(labels.size()) + " labels");
  double loss = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p = std::clamp(probs[i], kProbClamp, 1.0 - kProbClamp);
    loss += labels[i] ? w_pos_class * -std::log(p) : w_neg_class * -std::log(1.0 - p);
  }
  return loss;
}

Tensor document_loss(Tape& tape, const ShapedDocument& doc, std::span<const int> labels,
                     const RankerParams& params, const ModelConfig& config) {
  if (labels.size() < doc.n_real)
    throw ShapeError("document_loss: " + std::to_string(labels.size()) + " labels for " +
                     std::to_string(doc.n_real) + " sentences");
  const DocumentScores scores = score_document_graph(tape, doc, params, config);
  return tape.weighted_bce(scores.probs, labels.first(doc.n_real), config.w_pos_class,
                           config.w_neg_class, kProbClamp);
}

}  // namespace winsumm
