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

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "winsumm/random.hpp"
#include "winsumm/text.hpp"

namespace winsumm {

struct Document {
  std::string id;
  std::vector<Sentence> sentences;
  std::string source_path;

  std::size_t size() const { return sentences.size(); }
};

/// Build a document from raw text: sentence splitting plus tokenization.
/// Token vocab ids are left as UNK until assign_ids() is called.
Document make_document(std::string id, std::string_view text,
                       std::string source_path = {});

/// A paper and its gold summary (slide text). Both share the same id.
struct CorpusPair {
  Document doc;
  Document gold;
};

class Vocabulary {
 public:
  Vocabulary();

  /// Words appearing at least `min_count` times in the papers of `pairs`
  /// (gold summaries are not counted). Ids are assigned by descending
  /// frequency, ties broken lexicographically; PAD=0 and UNK=1 are reserved.
  static Vocabulary build(std::span<const CorpusPair> pairs, int min_count = 1);

  /// Rebuild from an id-ordered word list that excludes PAD and UNK.
  static Vocabulary from_words(std::span<const std::string> words);

  int id(std::string_view word) const;
  const std::string& word(int id) const { return words_.at(static_cast<std::size_t>(id)); }
  std::size_t size() const { return words_.size(); }
  bool contains(std::string_view word) const;
  int min_count() const { return min_count_; }

  /// Ordinary words in id order (PAD/UNK excluded).
  std::span<const std::string> corpus_words() const {
    return std::span<const std::string>(words_).subspan(2);
  }

  void save(const std::filesystem::path& path) const;
  static Vocabulary load(const std::filesystem::path& path);

 private:
  void add(std::string word);

  std::vector<std::string> words_;
  std::unordered_map<std::string, int> index_;
  int min_count_ = 1;
};

/// Fill Token::vocab_id for every token of `doc` from `vocab`.
void assign_ids(Document& doc, const Vocabulary& vocab);

/// Row-major |V| x dim matrix of initial word vectors.
struct WordEmbeddings {
  std::size_t dim = 0;
  std::vector<double> matrix;

  std::size_t rows() const { return dim == 0 ? 0 : matrix.size() / dim; }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(matrix).subspan(r * dim, dim);
  }
};

/// Random init for every row: uniform in [-0.1, 0.1], PAD row zero.
WordEmbeddings random_word_vectors(const Vocabulary& vocab, std::size_t dim, Rng& rng);

/// Load GloVe-style text vectors ("word v1 ... vd" per line) for the words in
/// `vocab`. Words absent from the file keep their random init. A first line
/// whose second field is not a number is treated as a header and skipped.
/// Throws DataError naming the line for malformed entries.
WordEmbeddings load_word_vectors(const std::filesystem::path& path,
                                 const Vocabulary& vocab, std::size_t dim,
                                 Rng& rng);

inline constexpr std::size_t kMaxSentences = 500;
inline constexpr std::size_t kMaxTokens = 50;

/// Fixed-size id grid used as ranker input.
struct ShapedDocument {
  std::size_t max_sents = kMaxSentences;
  std::size_t max_toks = kMaxTokens;
  std::vector<int> token_ids;           // max_sents * max_toks, PAD filled
  std::vector<std::size_t> sent_lengths;  // n_real entries
  std::size_t n_real = 0;

  std::span<const int> sentence(std::size_t i) const {
    return std::span<const int>(token_ids).subspan(i * max_toks, sent_lengths.at(i));
  }
};

/// Truncate/pad to `max_sents` x `max_toks`. Uses the tokens' vocab ids
/// as looked up in `vocab`.
ShapedDocument shape_document(const Document& doc, const Vocabulary& vocab,
                              std::size_t max_sents = kMaxSentences,
                              std::size_t max_toks = kMaxTokens);

struct LoadReport {
  std::vector<std::string> skipped;  // unpaired file names
};

/// Read `<id>.paper.txt` / `<id>.slides.txt` pairs from `dir`, sorted by id.
/// Unpaired files are listed in `report` (and logged to stderr).
std::vector<CorpusPair> load_corpus(const std::filesystem::path& dir,
                                    LoadReport* report = nullptr);

struct Split {
  std::vector<CorpusPair> train;
  std::vector<CorpusPair> valid;
  std::vector<CorpusPair> test;
};

/// Deterministic seeded shuffle followed by proportional partition. Sizes
/// are floor(n * f / sum) for valid and test; train takes the remainder.
Split split_corpus(std::vector<CorpusPair> pairs, std::uint64_t seed,
                   std::array<double, 3> fractions = {10.0, 1.0, 1.0});

}  // namespace winsumm
