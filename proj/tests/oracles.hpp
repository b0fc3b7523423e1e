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

// Independent reference implementations used by the tests. They favour
// obviousness over speed and share no code with the library.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace winsumm::oracle {

using Tokens = std::vector<std::string>;

// Clipped n-gram recall as a fraction num/den, counting by enumeration.
struct Fraction {
  std::size_t num = 0;
  std::size_t den = 0;
};

inline Fraction ngram_recall(const Tokens& cand, const Tokens& ref, std::size_t n) {
  std::vector<Tokens> ref_grams, cand_grams;
  for (std::size_t i = 0; i + n <= ref.size(); ++i) ref_grams.emplace_back(ref.begin() + i, ref.begin() + i + n);
  for (std::size_t i = 0; i + n <= cand.size(); ++i) cand_grams.emplace_back(cand.begin() + i, cand.begin() + i + n);
  // Match each reference occurrence against a not-yet-used candidate occurrence.
  std::vector<bool> used(cand_grams.size(), false);
  Fraction f;
  f.den = ref_grams.size();
  for (const auto& g : ref_grams) {
    for (std::size_t j = 0; j < cand_grams.size(); ++j) {
      if (!used[j] && cand_grams[j] == g) {
        used[j] = true;
        ++f.num;
        break;
      }
    }
  }
  return f;
}

inline bool is_subsequence(const Tokens& sub, const Tokens& seq) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < seq.size() && k < sub.size(); ++i)
    if (seq[i] == sub[k]) ++k;
  return k == sub.size();
}

// Longest common subsequence by trying every subsequence of `a`.
inline std::size_t lcs_enumerate(const Tokens& a, const Tokens& b) {
  std::size_t best = 0;
  const std::size_t total = std::size_t{1} << a.size();
  for (std::size_t mask = 0; mask < total; ++mask) {
    Tokens sub;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (mask >> i & 1) sub.push_back(a[i]);
    if (sub.size() > best && is_subsequence(sub, b)) best = sub.size();
  }
  return best;
}

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Row-major dense matrix helpers for the model oracles.
struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<double> v;
  double at(std::size_t r, std::size_t c) const { return v[r * cols + c]; }
};

inline std::vector<double> matvec(const Mat& m, const std::vector<double>& x) {
  std::vector<double> y(m.rows, 0.0);
  for (std::size_t r = 0; r < m.rows; ++r)
    for (std::size_t c = 0; c < m.cols; ++c) y[r] += m.at(r, c) * x[c];
  return y;
}

// One LSTM step with gates stacked input, forget, output, candidate.
inline void lstm_step(const Mat& wx, const Mat& wh, const std::vector<double>& b,
                      const std::vector<double>& x, std::vector<double>& h, std::vector<double>& c) {
  const std::size_t H = h.size();
  const auto gx = matvec(wx, x);
  const auto gh = matvec(wh, h);
  std::vector<double> h2(H), c2(H);
  for (std::size_t j = 0; j < H; ++j) {
    const double i = sigmoid(gx[j] + gh[j] + b[j]);
    const double f = sigmoid(gx[H + j] + gh[H + j] + b[H + j]);
    const double o = sigmoid(gx[2 * H + j] + gh[2 * H + j] + b[2 * H + j]);
    const double g = std::tanh(gx[3 * H + j] + gh[3 * H + j] + b[3 * H + j]);
    c2[j] = f * c[j] + i * g;
    h2[j] = o * std::tanh(c2[j]);
  }
  h = h2;
  c = c2;
}

struct Lstm {
  Mat wx, wh;
  std::vector<double> b;
};

// Rows [fwd_t, bwd_t] of a bidirectional run.
inline std::vector<std::vector<double>> bilstm(const Lstm& f, const Lstm& bk,
                                               const std::vector<std::vector<double>>& seq) {
  const std::size_t H = f.b.size() / 4;
  const std::size_t n = seq.size();
  std::vector<std::vector<double>> fw(n), bw(n);
  std::vector<double> h(H, 0.0), c(H, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    lstm_step(f.wx, f.wh, f.b, seq[t], h, c);
    fw[t] = h;
  }
  std::fill(h.begin(), h.end(), 0.0);
  std::fill(c.begin(), c.end(), 0.0);
  for (std::size_t t = n; t-- > 0;) {
    lstm_step(bk.wx, bk.wh, bk.b, seq[t], h, c);
    bw[t] = h;
  }
  std::vector<std::vector<double>> out(n);
  for (std::size_t t = 0; t < n; ++t) {
    out[t] = fw[t];
    out[t].insert(out[t].end(), bw[t].begin(), bw[t].end());
  }
  return out;
}

// flatten(softmax(W h^T) h) for attention matrix W [k, dim].
inline std::vector<double> attention_pool(const Mat& w, const std::vector<std::vector<double>>& states) {
  std::vector<double> out;
  for (std::size_t r = 0; r < w.rows; ++r) {
    std::vector<double> logits;
    for (const auto& s : states) {
      double z = 0.0;
      for (std::size_t c = 0; c < w.cols; ++c) z += w.at(r, c) * s[c];
      logits.push_back(z);
    }
    const double mx = *std::max_element(logits.begin(), logits.end());
    double total = 0.0;
    for (double& z : logits) total += (z = std::exp(z - mx));
    std::vector<double> pooled(w.cols, 0.0);
    for (std::size_t t = 0; t < states.size(); ++t)
      for (std::size_t c = 0; c < w.cols; ++c) pooled[c] += logits[t] / total * states[t][c];
    out.insert(out.end(), pooled.begin(), pooled.end());
  }
  return out;
}

inline double bilinear(const std::vector<double>& a, const Mat& w, const std::vector<double>& b) {
  double z = 0.0;
  for (std::size_t r = 0; r < w.rows; ++r)
    for (std::size_t c = 0; c < w.cols; ++c) z += a[r] * w.at(r, c) * b[c];
  return z;
}

}  // namespace winsumm::oracle
